use crate::range::Region;
use crate::IndexError;

/// Marker for "no next-level structure".
pub(crate) const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct BuildParams {
    /// Fan-out exponent: a node with `m` points gets `max(2, ⌈m^ε⌉)` children.
    pub eps: f64,
    pub leaf_cap: usize,
    /// Levels at or beyond this depth get no next-level structures.
    pub max_levels: usize,
}

impl Default for BuildParams {
    fn default() -> Self {
        BuildParams { eps: 0.25, leaf_cap: 32, max_levels: usize::MAX }
    }
}

/// Caller-defined description stored alongside the index.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IndexMeta {
    pub kind: String,
    pub rho: Option<f64>,
    pub columns: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub region: Region,
    /// Slice `[start, start + len)` of the owning tree's item list.
    pub start: u32,
    pub len: u32,
    pub first_child: u32,
    pub n_children: u32,
    /// Tree id of the next-level structure over this node's points.
    pub next: u32,
}

/// One partition tree over one coordinate of the t-points.
#[derive(Debug, Clone, PartialEq)]
pub struct Tree {
    pub level: u32,
    pub nodes: Vec<Node>,
    pub items: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultilevelIndex {
    pub(crate) t: usize,
    pub(crate) params: BuildParams,
    pub(crate) meta: IndexMeta,
    pub(crate) ids: Vec<String>,
    /// `n · t` planar points, item-major.
    pub(crate) coords: Vec<[f64; 2]>,
    pub(crate) trees: Vec<Tree>,
    pub(crate) root: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub n: usize,
    pub t: usize,
    pub trees: usize,
    pub nodes: usize,
    pub point_refs: usize,
    /// Deepest root-to-leaf path per level.
    pub depth_per_level: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub visited: usize,
    pub inside: usize,
    pub crossing: usize,
    pub leaf_scans: usize,
    pub points_tested: usize,
    pub reported: usize,
    pub plan_steps: usize,
}

impl QueryStats {
    /// Canonical sets used: provably-inside nodes plus scanned leaves.
    pub fn canonical_sets(&self) -> usize {
        self.inside + self.leaf_scans
    }
}

impl MultilevelIndex {
    pub fn build(
        ids: Vec<String>,
        points: &[Vec<[f64; 2]>],
        params: BuildParams,
        meta: IndexMeta,
    ) -> Result<Self, IndexError> {
        if ids.len() != points.len() {
            return Err(IndexError::Invalid("ids and points differ in length".into()));
        }
        let t = points.first().map_or(0, |p| p.len());
        if t == 0 && !points.is_empty() {
            return Err(IndexError::Invalid("t-points must have t >= 1".into()));
        }
        if points.iter().any(|p| p.len() != t) {
            return Err(IndexError::Invalid("t-points of different lengths".into()));
        }
        if points.iter().flatten().any(|c| !c[0].is_finite() || !c[1].is_finite()) {
            return Err(IndexError::Invalid("non-finite coordinate".into()));
        }
        if params.leaf_cap == 0 || !(params.eps > 0.0 && params.eps <= 1.0) {
            return Err(IndexError::Invalid("leaf_cap must be >= 1 and eps in (0, 1]".into()));
        }
        if points.len() >= NONE as usize {
            return Err(IndexError::Invalid("too many points".into()));
        }
        let coords = points.iter().flatten().copied().collect();
        let mut idx = MultilevelIndex { t, params, meta, ids, coords, trees: Vec::new(), root: NONE };
        if !points.is_empty() {
            let all = (0..points.len() as u32).collect();
            idx.root = idx.build_tree(all, 0);
        }
        Ok(idx)
    }

    #[inline]
    pub fn point(&self, item: u32, level: usize) -> [f64; 2] {
        self.coords[item as usize * self.t + level]
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, item: u32) -> &str {
        &self.ids[item as usize]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn meta(&self) -> &IndexMeta {
        &self.meta
    }

    pub fn params(&self) -> &BuildParams {
        &self.params
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn root(&self) -> Option<u32> {
        (self.root != NONE).then_some(self.root)
    }

    fn build_tree(&mut self, items: Vec<u32>, level: usize) -> u32 {
        let mut tree = Tree { level: level as u32, nodes: Vec::new(), items };
        let len = tree.items.len() as u32;
        tree.nodes.push(Node { region: Region::point(0.0, 0.0), start: 0, len, first_child: 0, n_children: 0, next: NONE });
        self.build_node(&mut tree, 0);
        self.trees.push(tree);
        (self.trees.len() - 1) as u32
    }

    fn build_node(&mut self, tree: &mut Tree, ni: usize) {
        let level = tree.level as usize;
        let (start, len) = (tree.nodes[ni].start as usize, tree.nodes[ni].len as usize);
        let slice = &mut tree.items[start..start + len];
        let p0 = self.point(slice[0], level);
        let mut region = Region::point(p0[0], p0[1]);
        for &it in slice.iter() {
            let p = self.point(it, level);
            region.expand(p[0], p[1]);
        }
        tree.nodes[ni].region = region;
        if len <= self.params.leaf_cap {
            return;
        }
        let r = ((len as f64).powf(self.params.eps).ceil() as usize).clamp(2, len);
        let mut groups = Vec::with_capacity(r);
        self.split(slice, level, r, 0, start, &mut groups);
        let first = tree.nodes.len();
        for &(s, l) in &groups {
            tree.nodes.push(Node {
                region,
                start: s as u32,
                len: l as u32,
                first_child: 0,
                n_children: 0,
                next: NONE,
            });
        }
        tree.nodes[ni].first_child = first as u32;
        tree.nodes[ni].n_children = groups.len() as u32;
        for c in first..first + groups.len() {
            self.build_node(tree, c);
        }
        if level + 1 < self.t && level + 1 < self.params.max_levels {
            let sub = tree.items[start..start + len].to_vec();
            tree.nodes[ni].next = self.build_tree(sub, level + 1);
        }
    }

    /// Recursive proportional median splits with alternating axes; ties by item id.
    fn split(
        &self,
        items: &mut [u32],
        level: usize,
        parts: usize,
        axis: usize,
        offset: usize,
        out: &mut Vec<(usize, usize)>,
    ) {
        if parts == 1 || items.len() <= 1 {
            out.push((offset, items.len()));
            return;
        }
        let lp = parts / 2;
        let cut = items.len() * lp / parts;
        let key = |it: &u32| (self.point(*it, level)[axis], *it);
        items.select_nth_unstable_by(cut, |a, b| {
            let (ka, kb) = (key(a), key(b));
            ka.0.total_cmp(&kb.0).then(ka.1.cmp(&kb.1))
        });
        let (left, right) = items.split_at_mut(cut);
        self.split(left, level, lp, 1 - axis, offset, out);
        self.split(right, level, parts - lp, 1 - axis, offset + cut, out);
    }
}

impl MultilevelIndex {
    pub fn stats(&self) -> BuildStats {
        let mut depth = vec![0usize; self.t];
        for tree in &self.trees {
            let d = node_depth(tree, 0);
            let l = tree.level as usize;
            depth[l] = depth[l].max(d);
        }
        BuildStats {
            n: self.len(),
            t: self.t,
            trees: self.trees.len(),
            nodes: self.trees.iter().map(|t| t.nodes.len()).sum(),
            point_refs: self.trees.iter().map(|t| t.items.len()).sum(),
            depth_per_level: depth,
        }
    }
}

fn node_depth(tree: &Tree, ni: usize) -> usize {
    let n = &tree.nodes[ni];
    1 + (n.first_child..n.first_child + n.n_children)
        .map(|c| node_depth(tree, c as usize))
        .max()
        .unwrap_or(0)
}
