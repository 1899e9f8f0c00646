use frix_geometry::{Point2, Scalar};

/// Polygonal chain given by its vertices; repeated consecutive vertices are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve<T> {
    pub id: String,
    pub vertices: Vec<Point2<T>>,
}

impl<T: Scalar> Curve<T> {
    pub fn new(id: impl Into<String>, vertices: Vec<Point2<T>>) -> Self {
        Curve { id: id.into(), vertices }
    }

    /// Anonymous curve from raw `(x, y)` pairs.
    pub fn from_xy(xy: &[(f64, f64)]) -> Self {
        Curve::new("", xy.iter().map(|&(x, y)| Point2::new(T::lit(x), T::lit(y))).collect())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Drops consecutive duplicate vertices. The continuous Fréchet distance is unchanged.
    pub fn dedup_consecutive(&self) -> Self {
        let mut v = self.vertices.clone();
        v.dedup();
        Curve::new(self.id.clone(), v)
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Curve::new(self.id.clone(), v)
    }
}
