//! Binary format: magic `FRIX`, `u32` version, then little-endian fields.

use std::io::{Read, Write};

use crate::range::Region;
use crate::tree::{BuildParams, IndexMeta, MultilevelIndex, Node, Tree};
use crate::IndexError;

const MAGIC: &[u8; 4] = b"FRIX";
pub const FORMAT_VERSION: u32 = 1;

struct W<'a, O: Write>(&'a mut O);

impl<O: Write> W<'_, O> {
    fn u32(&mut self, v: u32) -> std::io::Result<()> {
        self.0.write_all(&v.to_le_bytes())
    }
    fn u64(&mut self, v: u64) -> std::io::Result<()> {
        self.0.write_all(&v.to_le_bytes())
    }
    fn f64(&mut self, v: f64) -> std::io::Result<()> {
        self.0.write_all(&v.to_le_bytes())
    }
    fn str(&mut self, s: &str) -> std::io::Result<()> {
        self.u64(s.len() as u64)?;
        self.0.write_all(s.as_bytes())
    }
}

struct R<'a, I: Read>(&'a mut I);

impl<I: Read> R<'_, I> {
    fn bytes<const N: usize>(&mut self) -> Result<[u8; N], IndexError> {
        let mut b = [0u8; N];
        self.0.read_exact(&mut b).map_err(|e| IndexError::Corrupt(format!("truncated: {e}")))?;
        Ok(b)
    }
    fn u32(&mut self) -> Result<u32, IndexError> {
        Ok(u32::from_le_bytes(self.bytes()?))
    }
    fn u64(&mut self) -> Result<u64, IndexError> {
        Ok(u64::from_le_bytes(self.bytes()?))
    }
    fn f64(&mut self) -> Result<f64, IndexError> {
        Ok(f64::from_le_bytes(self.bytes()?))
    }
    fn len(&mut self, limit: u64) -> Result<usize, IndexError> {
        let n = self.u64()?;
        if n > limit {
            return Err(IndexError::Corrupt(format!("length {n} exceeds limit {limit}")));
        }
        Ok(n as usize)
    }
    fn str(&mut self) -> Result<String, IndexError> {
        let n = self.len(1 << 24)?;
        let mut b = vec![0u8; n];
        self.0.read_exact(&mut b).map_err(|e| IndexError::Corrupt(format!("truncated: {e}")))?;
        String::from_utf8(b).map_err(|_| IndexError::Corrupt("invalid utf-8".into()))
    }
}

const LIMIT: u64 = 1 << 32;

impl MultilevelIndex {
    pub fn write_to<O: Write>(&self, out: &mut O) -> Result<(), IndexError> {
        let mut w = W(out);
        w.0.write_all(MAGIC)?;
        w.u32(FORMAT_VERSION)?;
        w.u64(self.t as u64)?;
        w.f64(self.params.eps)?;
        w.u64(self.params.leaf_cap as u64)?;
        w.u64(self.params.max_levels.min(u64::MAX as usize) as u64)?;
        w.str(&self.meta.kind)?;
        match self.meta.rho {
            Some(r) => {
                w.u32(1)?;
                w.f64(r)?;
            }
            None => w.u32(0)?,
        }
        w.u64(self.meta.columns.len() as u64)?;
        for c in &self.meta.columns {
            w.str(c)?;
        }
        w.u64(self.ids.len() as u64)?;
        for id in &self.ids {
            w.str(id)?;
        }
        for p in &self.coords {
            w.f64(p[0])?;
            w.f64(p[1])?;
        }
        w.u32(self.root)?;
        w.u64(self.trees.len() as u64)?;
        for t in &self.trees {
            w.u32(t.level)?;
            w.u64(t.nodes.len() as u64)?;
            for n in &t.nodes {
                for v in [n.region.x0, n.region.y0, n.region.x1, n.region.y1] {
                    w.f64(v)?;
                }
                for v in [n.start, n.len, n.first_child, n.n_children, n.next] {
                    w.u32(v)?;
                }
            }
            w.u64(t.items.len() as u64)?;
            for &it in &t.items {
                w.u32(it)?;
            }
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut v = Vec::new();
        self.write_to(&mut v).expect("writing to memory cannot fail");
        v
    }

    pub fn read_from<I: Read>(input: &mut I) -> Result<Self, IndexError> {
        let mut r = R(input);
        if &r.bytes::<4>()? != MAGIC {
            return Err(IndexError::Corrupt("bad magic".into()));
        }
        let version = r.u32()?;
        if version != FORMAT_VERSION {
            return Err(IndexError::Corrupt(format!("unsupported version {version}")));
        }
        let t = r.len(1 << 16)?;
        let eps = r.f64()?;
        let leaf_cap = r.u64()? as usize;
        let max_levels = r.u64()?.min(usize::MAX as u64) as usize;
        let kind = r.str()?;
        let rho = match r.u32()? {
            0 => None,
            1 => Some(r.f64()?),
            x => return Err(IndexError::Corrupt(format!("bad rho tag {x}"))),
        };
        let nc = r.len(1 << 20)?;
        let columns = (0..nc).map(|_| r.str()).collect::<Result<_, _>>()?;
        let n = r.len(LIMIT)?;
        let ids: Vec<String> = (0..n).map(|_| r.str()).collect::<Result<_, _>>()?;
        let mut coords = Vec::with_capacity(n * t);
        for _ in 0..n * t {
            coords.push([r.f64()?, r.f64()?]);
        }
        let root = r.u32()?;
        let nt = r.len(LIMIT)?;
        let mut trees = Vec::with_capacity(nt.min(1 << 20));
        for _ in 0..nt {
            let level = r.u32()?;
            let nn = r.len(LIMIT)?;
            let mut nodes = Vec::with_capacity(nn.min(1 << 20));
            for _ in 0..nn {
                let region = Region::new(r.f64()?, r.f64()?, r.f64()?, r.f64()?);
                nodes.push(Node {
                    region,
                    start: r.u32()?,
                    len: r.u32()?,
                    first_child: r.u32()?,
                    n_children: r.u32()?,
                    next: r.u32()?,
                });
            }
            let ni = r.len(LIMIT)?;
            let items = (0..ni).map(|_| r.u32()).collect::<Result<_, _>>()?;
            trees.push(Tree { level, nodes, items });
        }
        let idx = MultilevelIndex {
            t,
            params: BuildParams { eps, leaf_cap, max_levels },
            meta: IndexMeta { kind, rho, columns },
            ids,
            coords,
            trees,
            root,
        };
        idx.validate()?;
        Ok(idx)
    }

    pub fn from_bytes(mut bytes: &[u8]) -> Result<Self, IndexError> {
        Self::read_from(&mut bytes)
    }

    /// Structural audit: ranges in bounds, children partition parents, links valid.
    pub fn validate(&self) -> Result<(), IndexError> {
        let bad = |m: &str| Err(IndexError::Corrupt(m.to_string()));
        let n = self.ids.len() as u32;
        if self.root == crate::tree::NONE {
            return if n == 0 { Ok(()) } else { bad("missing root") };
        }
        if self.root as usize >= self.trees.len() {
            return bad("root out of range");
        }
        for t in &self.trees {
            if t.level as usize >= self.t.max(1) || t.nodes.is_empty() {
                return bad("bad tree level");
            }
            if t.items.iter().any(|&i| i >= n) {
                return bad("item out of range");
            }
            for nd in &t.nodes {
                if (nd.start as u64 + nd.len as u64) > t.items.len() as u64 {
                    return bad("node slice out of range");
                }
                if nd.n_children > 0 {
                    let end = nd.first_child as u64 + nd.n_children as u64;
                    if end > t.nodes.len() as u64 || nd.first_child == 0 {
                        return bad("child range out of range");
                    }
                    let mut pos = nd.start;
                    for c in &t.nodes[nd.first_child as usize..end as usize] {
                        if c.start != pos {
                            return bad("children do not partition parent");
                        }
                        pos += c.len;
                    }
                    if pos != nd.start + nd.len {
                        return bad("children do not cover parent");
                    }
                }
                if nd.next != crate::tree::NONE {
                    match self.trees.get(nd.next as usize) {
                        Some(nt) if nt.level == t.level + 1 && nt.items.len() == nd.len as usize => {}
                        _ => return bad("bad next-level link"),
                    }
                }
            }
        }
        Ok(())
    }
}
