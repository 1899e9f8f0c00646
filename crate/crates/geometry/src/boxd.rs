use crate::{GeomError, Scalar};

/// Axis-aligned box in `D` dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxD<T> {
    pub lo: Vec<T>,
    pub hi: Vec<T>,
}

impl<T: Scalar> BoxD<T> {
    pub fn dim(&self) -> usize {
        self.lo.len()
    }
}

/// Smallest box containing all points.
pub fn box_of<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Result<BoxD<T>, GeomError> {
    let first = points.first().ok_or(GeomError::Invalid("empty point set".into()))?.as_ref();
    let mut lo = first.to_vec();
    let mut hi = first.to_vec();
    for p in &points[1..] {
        let p = p.as_ref();
        if p.len() != lo.len() {
            return Err(GeomError::Invalid("inconsistent dimensions".into()));
        }
        for (k, &v) in p.iter().enumerate() {
            lo[k] = lo[k].min(v);
            hi[k] = hi[k].max(v);
        }
    }
    Ok(BoxD { lo, hi })
}

pub fn box_volume<T: Scalar>(b: &BoxD<T>) -> T {
    b.lo.iter().zip(&b.hi).fold(T::one(), |acc, (&l, &h)| acc * (h - l))
}
