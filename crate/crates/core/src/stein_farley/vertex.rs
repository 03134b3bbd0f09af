use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::thompson::{Address, Forest, TreePair};

/// A vertex of the Stein–Farley complex of `V_{d,r}`: a height `k` and a
/// diagram `ψ` from `r + k(d-1)` copies of the root onto the `r` roots, up to
/// permuting the copies. `ψ` is stored reduced with its copies sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SfVertex {
    height: u32,
    psi: TreePair,
}

/// Canonical form of a finite union of cylinders: complete sibling sets are
/// merged into their parent until none remain.
pub fn normalize_cylinders(d: u32, set: impl IntoIterator<Item = Address>) -> Vec<Address> {
    let mut cur: BTreeSet<Address> = set.into_iter().collect();
    loop {
        let mut groups: BTreeMap<Address, usize> = BTreeMap::new();
        for a in &cur {
            if let Some(p) = a.parent() {
                *groups.entry(p).or_default() += 1;
            }
        }
        let Some((p, _)) = groups.into_iter().find(|(_, n)| *n == d as usize) else {
            return cur.into_iter().collect();
        };
        for i in 0..d {
            cur.remove(&p.child(i as u8));
        }
        cur.insert(p);
    }
}

impl SfVertex {
    /// Height 0, identity diagram.
    pub fn base(d: u32, r: u32) -> Self {
        SfVertex {
            height: 0,
            psi: TreePair::identity(d, r),
        }
    }

    /// Canonical vertex of `(height, psi)`. `psi` must go from
    /// `r + height(d-1)` roots onto `r` roots.
    pub fn new(height: u32, psi: &TreePair) -> Result<Self> {
        let (d, r, n) = (psi.d(), psi.target_roots(), psi.source_roots());
        if n != r + height * (d - 1) {
            return Err(Error::InvalidArgument(format!(
                "height {height} needs {} copies, diagram has {n}",
                r + height * (d - 1)
            )));
        }
        Ok(Self::canonical(height, psi.reduce()))
    }

    fn canonical(height: u32, psi: TreePair) -> Self {
        let n = psi.source_roots();
        let mut keys: Vec<Vec<(Vec<u8>, Address)>> = vec![Vec::new(); n as usize];
        for (a, b) in psi.leaf_map() {
            keys[a.root as usize].push((a.word.clone(), b));
        }
        for k in &mut keys {
            k.sort();
        }
        let mut order: Vec<u32> = (0..n).collect();
        order.sort_by(|a, b| keys[*a as usize].cmp(&keys[*b as usize]));
        if order.iter().enumerate().all(|(i, j)| i as u32 == *j) {
            return SfVertex { height, psi };
        }
        let mut newpos = vec![0; n as usize];
        for (i, j) in order.iter().enumerate() {
            newpos[*j as usize] = i as u32;
        }
        let moved = |a: &Address| Address {
            root: newpos[a.root as usize],
            word: a.word.clone(),
        };
        let dom = psi.domain();
        let carets = dom.carets().iter().map(moved).collect();
        let domain = Forest::new(dom.d(), n, carets).expect("relabeled forest");
        let map = psi.leaf_map().into_iter().map(|(a, b)| (moved(&a), b)).collect();
        SfVertex {
            height,
            psi: TreePair::from_leaf_map(domain, psi.range().clone(), map),
        }
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn psi(&self) -> &TreePair {
        &self.psi
    }

    pub fn d(&self) -> u32 {
        self.psi.d()
    }

    pub fn r(&self) -> u32 {
        self.psi.target_roots()
    }

    /// Number of copies, `r + k(d-1)`.
    pub fn copies(&self) -> u32 {
        self.psi.source_roots()
    }

    /// Image of copy `j` in the boundary, as a canonical cylinder set.
    pub fn copy_image(&self, j: u32) -> Vec<Address> {
        normalize_cylinders(
            self.d(),
            self.psi.leaf_map().into_iter().filter(|(a, _)| a.root == j).map(|(_, b)| b),
        )
    }

    /// Split copy `i` into `d` copies.
    pub fn up(&self, i: u32) -> SfVertex {
        let n = self.copies();
        assert!(i < n, "copy {i} out of range");
        let mut f = Forest::trivial(self.d(), n);
        f.add_caret(&Address::root(i));
        let split = TreePair::from_forest(&f);
        Self::canonical(self.height + 1, self.psi.compose(&split).expect("matching roots"))
    }

    /// All vertices one split above.
    pub fn above(&self) -> Vec<SfVertex> {
        (0..self.copies()).map(|i| self.up(i)).collect()
    }

    /// Merges each ordered `d`-tuple of copies into one copy. The tuples must
    /// be pairwise disjoint and at most `height` of them.
    pub fn merge(&self, tuples: &[Vec<u32>]) -> Result<SfVertex> {
        let (d, n) = (self.d(), self.copies());
        let q = tuples.len() as u32;
        if q > self.height {
            return Err(Error::InvalidArgument(format!(
                "{q} merges below height {}",
                self.height
            )));
        }
        let mut used = BTreeSet::new();
        for t in tuples {
            if t.len() != d as usize || t.iter().any(|c| *c >= n || !used.insert(*c)) {
                return Err(Error::InvalidArgument(format!("bad merge tuple {t:?}")));
            }
        }
        let m = n - q * (d - 1);
        let mut domain = Forest::trivial(d, m);
        let mut map = BTreeMap::new();
        for (j, t) in tuples.iter().enumerate() {
            let root = Address::root(j as u32);
            domain.add_caret(&root);
            for (i, c) in t.iter().enumerate() {
                map.insert(root.child(i as u8), Address::root(*c));
            }
        }
        let rest = (0..n).filter(|c| !used.contains(c));
        for (j, c) in (q..m).zip(rest) {
            map.insert(Address::root(j), Address::root(c));
        }
        let kappa = TreePair::from_leaf_map(domain, Forest::trivial(d, n), map);
        let psi = self.psi.compose(&kappa).expect("matching roots");
        Ok(Self::canonical(self.height - q, psi))
    }

    /// Ordered `d`-tuples of distinct copies, lexicographic. Empty at height 0.
    pub fn lower_tuples(&self) -> Vec<Vec<u32>> {
        if self.height == 0 {
            return Vec::new();
        }
        let (d, n) = (self.d() as usize, self.copies());
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(d);
        fn rec(n: u32, d: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == d {
                out.push(cur.clone());
                return;
            }
            for c in 0..n {
                if !cur.contains(&c) {
                    cur.push(c);
                    rec(n, d, cur, out);
                    cur.pop();
                }
            }
        }
        rec(n, d, &mut cur, &mut out);
        out
    }

    /// All vertices one merge below, in the order of `lower_tuples`.
    pub fn below(&self) -> Vec<SfVertex> {
        self.lower_tuples()
            .iter()
            .map(|t| self.merge(std::slice::from_ref(t)).expect("valid tuple"))
            .collect()
    }

    /// Left action `g·v`.
    pub fn act(&self, g: &TreePair) -> Result<SfVertex> {
        if g.d() != self.d() || g.source_roots() != self.r() || g.target_roots() != self.r() {
            return Err(Error::ParameterMismatch(format!(
                "element of V_{{{},{}}} acting on V_{{{},{}}}",
                g.d(),
                g.target_roots(),
                self.d(),
                self.r()
            )));
        }
        Ok(Self::canonical(self.height, g.compose(&self.psi)?))
    }

    /// `self ⪯ other`: `other` arises from `self` by splitting distinct
    /// copies once each.
    pub fn precedes(&self, other: &SfVertex) -> bool {
        if self.d() != other.d() || self.r() != other.r() || other.height < self.height {
            return false;
        }
        let q = (other.height - self.height) as usize;
        let Ok(chi) = self.psi.inverse().compose(&other.psi) else {
            return false;
        };
        chi.domain().num_carets() == 0
            && chi.range().num_carets() == q
            && chi.range().carets().iter().all(|c| c.word.is_empty())
    }

    /// A pair `(F, g)` representing the vertex: `F` is the balanced forest
    /// with `k` carets added breadth first across the roots, and
    /// `ψ = g ∘ φ_F` where `φ_F` sends the copies onto the leaves of `F`.
    pub fn representative(&self) -> (Forest, TreePair) {
        let f = balanced_forest(self.d(), self.r(), self.height as usize);
        let phi = TreePair::from_forest(&f);
        let g = self.psi.compose(&phi.inverse()).expect("matching roots");
        (f, g)
    }
}

/// Forest with `k` carets, each added at the oldest remaining leaf.
pub fn balanced_forest(d: u32, r: u32, k: usize) -> Forest {
    let mut f = Forest::trivial(d, r);
    let mut queue: VecDeque<Address> = (0..r).map(Address::root).collect();
    for _ in 0..k {
        let a = queue.pop_front().expect("forest has leaves");
        f.add_caret(&a);
        for i in 0..d {
            queue.push_back(a.child(i as u8));
        }
    }
    f
}

/// Roots carrying at least one caret.
pub fn nonempty_branches(f: &Forest) -> usize {
    f.carets().iter().map(|c| c.root).collect::<BTreeSet<_>>().len()
}

impl fmt::Display for SfVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} {}", self.height, self.psi)
    }
}
