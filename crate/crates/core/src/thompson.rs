//! Higman–Thompson groups `V_{d,r}` as reduced tree-pair diagrams.
//!
//! A [`TreePair`] maps the leaves of a domain forest bijectively onto the
//! leaves of a range forest and acts on infinite addresses by prefix
//! replacement. Domain and range may have different root counts, which turns
//! the same type into the groupoid of diagrams between forests; elements of
//! `V_{d,r}` are the diagrams with `r` roots on both sides.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A node of a forest: a root index and a word over `0..d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Address {
    pub root: u32,
    pub word: Vec<u8>,
}

impl Address {
    pub fn root(root: u32) -> Self {
        Address { root, word: Vec::new() }
    }

    pub fn child(&self, i: u8) -> Address {
        let mut word = self.word.clone();
        word.push(i);
        Address { root: self.root, word }
    }

    pub fn parent(&self) -> Option<Address> {
        let mut word = self.word.clone();
        word.pop()?;
        Some(Address { root: self.root, word })
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        self.root == other.root && other.word.starts_with(&self.word)
    }

    pub fn depth(&self) -> usize {
        self.word.len()
    }

    /// Parses `root:word`, e.g. `0:101`; a bare word means root 0.
    pub fn parse(s: &str) -> Result<Address> {
        let (root, word) = match s.split_once(':') {
            Some((r, w)) => (
                r.trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad root in address {s:?}")))?,
                w.trim(),
            ),
            None => (0, s.trim()),
        };
        let word = word
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|x| x as u8)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad digit {c:?} in address {s:?}")))
            })
            .collect::<Result<_>>()?;
        Ok(Address { root, word })
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.root)?;
        for x in &self.word {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// A finite `d`-ary forest with a fixed number of roots, given by the set of
/// its internal nodes (carets).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forest {
    d: u32,
    roots: u32,
    carets: BTreeSet<Address>,
}

impl Forest {
    pub fn trivial(d: u32, roots: u32) -> Self {
        Forest {
            d,
            roots,
            carets: BTreeSet::new(),
        }
    }

    pub fn new(d: u32, roots: u32, carets: BTreeSet<Address>) -> Result<Self> {
        if d < 1 || roots < 1 {
            return Err(Error::InvalidTreePair("need d >= 1 and at least one root".into()));
        }
        for c in &carets {
            if c.root >= roots || c.word.iter().any(|x| u32::from(*x) >= d) {
                return Err(Error::InvalidTreePair(format!("caret {c} out of range")));
            }
            if let Some(p) = c.parent() {
                if !carets.contains(&p) {
                    return Err(Error::InvalidTreePair(format!("caret {c} has no parent caret")));
                }
            }
        }
        Ok(Forest { d, roots, carets })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn roots(&self) -> u32 {
        self.roots
    }

    pub fn carets(&self) -> &BTreeSet<Address> {
        &self.carets
    }

    pub fn num_carets(&self) -> usize {
        self.carets.len()
    }

    pub fn has_caret(&self, a: &Address) -> bool {
        self.carets.contains(a)
    }

    /// Leaves in depth-first order, roots left to right.
    pub fn leaves(&self) -> Vec<Address> {
        let mut out = Vec::with_capacity(self.leaf_count());
        let mut stack: Vec<Address> = (0..self.roots).rev().map(Address::root).collect();
        while let Some(a) = stack.pop() {
            if self.carets.contains(&a) {
                for i in (0..self.d).rev() {
                    stack.push(a.child(i as u8));
                }
            } else {
                out.push(a);
            }
        }
        out
    }

    pub fn leaf_count(&self) -> usize {
        self.roots as usize + self.carets.len() * (self.d as usize - 1)
    }

    pub fn is_leaf(&self, a: &Address) -> bool {
        a.root < self.roots
            && !self.carets.contains(a)
            && a.parent().is_none_or(|p| self.carets.contains(&p))
    }

    /// Carets all of whose children are leaves.
    pub fn exposed_carets(&self) -> Vec<Address> {
        self.carets
            .iter()
            .filter(|c| (0..self.d).all(|i| !self.carets.contains(&c.child(i as u8))))
            .cloned()
            .collect()
    }

    pub fn children(&self, a: &Address) -> Vec<Address> {
        (0..self.d).map(|i| a.child(i as u8)).collect()
    }

    pub fn add_caret(&mut self, leaf: &Address) {
        debug_assert!(self.is_leaf(leaf));
        self.carets.insert(leaf.clone());
    }

    pub fn remove_caret(&mut self, caret: &Address) {
        self.carets.remove(caret);
    }

    /// Union of the caret sets.
    pub fn union(&self, other: &Forest) -> Forest {
        Forest {
            d: self.d,
            roots: self.roots,
            carets: self.carets.union(&other.carets).cloned().collect(),
        }
    }

    /// Maximum depth of a leaf.
    pub fn depth(&self) -> usize {
        self.carets.iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    /// Parses the nested-parenthesis form: `.` is a leaf, `(t_1 ... t_d)` a
    /// caret; the trees of the forest are concatenated.
    pub fn parse(d: u32, s: &str) -> Result<Forest> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let mut carets = BTreeSet::new();
        fn tree(
            chars: &[char],
            pos: &mut usize,
            at: Address,
            d: u32,
            carets: &mut BTreeSet<Address>,
        ) -> Result<()> {
            match chars.get(*pos) {
                Some('.') => {
                    *pos += 1;
                    Ok(())
                }
                Some('(') => {
                    *pos += 1;
                    carets.insert(at.clone());
                    for i in 0..d {
                        tree(chars, pos, at.child(i as u8), d, carets)?;
                    }
                    if chars.get(*pos) != Some(&')') {
                        return Err(Error::InvalidTreePair(format!("expected ')' at {pos}")));
                    }
                    *pos += 1;
                    Ok(())
                }
                other => Err(Error::InvalidTreePair(format!("unexpected {other:?} at {pos}"))),
            }
        }
        let mut roots = 0;
        while pos < chars.len() {
            tree(&chars, &mut pos, Address::root(roots), d, &mut carets)?;
            roots += 1;
        }
        Forest::new(d, roots, carets)
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn tree(fo: &Forest, a: Address, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if fo.carets.contains(&a) {
                write!(f, "(")?;
                for i in 0..fo.d {
                    tree(fo, a.child(i as u8), f)?;
                }
                write!(f, ")")
            } else {
                write!(f, ".")
            }
        }
        for r in 0..self.roots {
            tree(self, Address::root(r), f)?;
        }
        Ok(())
    }
}

/// A tree-pair diagram: domain leaf `i` is sent to range leaf `perm[i]`.
/// Always kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreePair {
    domain: Forest,
    range: Forest,
    perm: Vec<usize>,
}

/// Working form: explicit map from domain leaves to range leaves.
#[derive(Clone, Debug)]
struct Diagram {
    domain: Forest,
    range: Forest,
    map: BTreeMap<Address, Address>,
}

impl Diagram {
    fn expand_domain_leaf(&mut self, leaf: &Address) {
        let img = self.map.remove(leaf).expect("domain leaf");
        self.domain.add_caret(leaf);
        self.range.add_caret(&img);
        for i in 0..self.domain.d {
            self.map.insert(leaf.child(i as u8), img.child(i as u8));
        }
    }

    fn expand_range_leaf(&mut self, leaf: &Address) {
        let pre = self
            .map
            .iter()
            .find(|(_, v)| *v == leaf)
            .map(|(k, _)| k.clone())
            .expect("range leaf");
        self.expand_domain_leaf(&pre);
    }

    fn reduce(&mut self) {
        loop {
            let mut done = true;
            for p in self.domain.exposed_carets() {
                let imgs: Vec<&Address> = self
                    .domain
                    .children(&p)
                    .iter()
                    .map(|c| &self.map[c])
                    .collect();
                let Some(q) = imgs[0].parent() else { continue };
                let matched = imgs
                    .iter()
                    .enumerate()
                    .all(|(i, a)| a.parent().as_ref() == Some(&q) && a.word.last() == Some(&(i as u8)));
                if matched {
                    for c in self.domain.children(&p) {
                        self.map.remove(&c);
                    }
                    self.domain.remove_caret(&p);
                    self.range.remove_caret(&q);
                    self.map.insert(p, q);
                    done = false;
                    break;
                }
            }
            if done {
                return;
            }
        }
    }

    fn into_pair(mut self) -> TreePair {
        self.reduce();
        self.into_pair_unreduced()
    }

    fn into_pair_unreduced(self) -> TreePair {
        let range_index: BTreeMap<Address, usize> = self
            .range
            .leaves()
            .into_iter()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let perm = self
            .domain
            .leaves()
            .iter()
            .map(|l| range_index[&self.map[l]])
            .collect();
        TreePair {
            domain: self.domain,
            range: self.range,
            perm,
        }
    }
}

impl TreePair {
    /// Builds and reduces a diagram. `perm[i]` is the range leaf receiving
    /// domain leaf `i`.
    pub fn new(domain: Forest, range: Forest, perm: Vec<usize>) -> Result<Self> {
        Self::new_unreduced(domain, range, perm).map(|t| t.reduce())
    }

    /// Builds a diagram without reducing it.
    pub fn new_unreduced(domain: Forest, range: Forest, perm: Vec<usize>) -> Result<Self> {
        if domain.d != range.d {
            return Err(Error::ParameterMismatch(format!(
                "domain has d = {}, range has d = {}",
                domain.d, range.d
            )));
        }
        let n = domain.leaf_count();
        if range.leaf_count() != n || perm.len() != n {
            return Err(Error::InvalidTreePair(format!(
                "{} domain leaves, {} range leaves, {} permutation entries",
                n,
                range.leaf_count(),
                perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for p in &perm {
            if *p >= n || std::mem::replace(&mut seen[*p], true) {
                return Err(Error::InvalidTreePair("not a permutation".into()));
            }
        }
        Ok(TreePair { domain, range, perm })
    }

    /// Diagram from an explicit leaf map, not reduced. The caller guarantees
    /// that `map` is a bijection between the leaves.
    pub(crate) fn from_leaf_map(domain: Forest, range: Forest, map: BTreeMap<Address, Address>) -> Self {
        Diagram { domain, range, map }.into_pair_unreduced()
    }

    pub fn identity(d: u32, r: u32) -> Self {
        TreePair {
            domain: Forest::trivial(d, r),
            range: Forest::trivial(d, r),
            perm: (0..r as usize).collect(),
        }
    }

    /// The diagram from the leaves of `f` (as trivial roots) onto `f`,
    /// order preserving.
    pub fn from_forest(f: &Forest) -> Self {
        let n = f.leaf_count();
        TreePair {
            domain: Forest::trivial(f.d, n as u32),
            range: f.clone(),
            perm: (0..n).collect(),
        }
    }

    pub fn d(&self) -> u32 {
        self.domain.d
    }

    pub fn domain(&self) -> &Forest {
        &self.domain
    }

    pub fn range(&self) -> &Forest {
        &self.range
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Roots on the domain side.
    pub fn source_roots(&self) -> u32 {
        self.domain.roots
    }

    /// Roots on the range side.
    pub fn target_roots(&self) -> u32 {
        self.range.roots
    }

    pub fn is_identity(&self) -> bool {
        self.domain.carets.is_empty()
            && self.range.carets.is_empty()
            && self.perm.iter().enumerate().all(|(i, p)| i == *p)
    }

    fn diagram(&self) -> Diagram {
        let rl = self.range.leaves();
        let map = self
            .domain
            .leaves()
            .into_iter()
            .zip(&self.perm)
            .map(|(a, p)| (a, rl[*p].clone()))
            .collect();
        Diagram {
            domain: self.domain.clone(),
            range: self.range.clone(),
            map,
        }
    }

    /// Leaf pairs `(domain leaf, range leaf)` in domain order.
    pub fn leaf_map(&self) -> Vec<(Address, Address)> {
        self.diagram().map.into_iter().collect()
    }

    /// The unique reduced representative.
    pub fn reduce(&self) -> TreePair {
        self.diagram().into_pair()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduce() == *self
    }

    /// The same element with one more caret on each side, at domain leaf
    /// `i`. The result is not reduced.
    pub fn expand(&self, i: usize) -> TreePair {
        let mut dg = self.diagram();
        let leaf = self.domain.leaves()[i].clone();
        dg.expand_domain_leaf(&leaf);
        dg.into_pair_unreduced()
    }

    pub fn inverse(&self) -> TreePair {
        let mut inv = vec![0; self.perm.len()];
        for (i, p) in self.perm.iter().enumerate() {
            inv[*p] = i;
        }
        TreePair {
            domain: self.range.clone(),
            range: self.domain.clone(),
            perm: inv,
        }
    }

    /// `self ∘ h`: apply `h` first.
    pub fn compose(&self, h: &TreePair) -> Result<TreePair> {
        if self.d() != h.d() || self.domain.roots != h.range.roots {
            return Err(Error::ParameterMismatch(format!(
                "cannot compose: d {} vs {}, roots {} vs {}",
                self.d(),
                h.d(),
                self.domain.roots,
                h.range.roots
            )));
        }
        let common = h.range.union(&self.domain);
        let mut hd = h.diagram();
        let mut gd = self.diagram();
        // carets in order of depth, so parents come first
        let mut todo: Vec<&Address> = common.carets.iter().collect();
        todo.sort_by_key(|a| (a.depth(), (*a).clone()));
        for c in todo {
            if !hd.range.has_caret(c) {
                hd.expand_range_leaf(c);
            }
            if !gd.domain.has_caret(c) {
                gd.expand_domain_leaf(c);
            }
        }
        let map = hd.map.iter().map(|(a, b)| (a.clone(), gd.map[b].clone())).collect();
        Ok(Diagram {
            domain: hd.domain,
            range: gd.range,
            map,
        }
        .into_pair())
    }

    /// Prefix replacement on an address extending a domain leaf.
    pub fn act(&self, a: &Address) -> Result<Address> {
        let rl = self.range.leaves();
        for (i, l) in self.domain.leaves().iter().enumerate() {
            if l.is_prefix_of(a) {
                let img = &rl[self.perm[i]];
                let mut word = img.word.clone();
                word.extend_from_slice(&a.word[l.word.len()..]);
                return Ok(Address { root: img.root, word });
            }
        }
        Err(Error::AddressTooShallow(a.to_string()))
    }

    /// Equal as maps of the boundary: agree on every leaf of the union of the
    /// two domain forests.
    pub fn acts_like(&self, other: &TreePair) -> bool {
        if self.d() != other.d() || self.domain.roots != other.domain.roots {
            return false;
        }
        let u = self.domain.union(&other.domain);
        u.leaves()
            .iter()
            .all(|l| self.act(l).ok() == other.act(l).ok())
    }

    /// Parses `domain`, `range` in parenthesis form plus a permutation.
    pub fn parse(d: u32, domain: &str, range: &str, perm: Vec<usize>) -> Result<Self> {
        Self::new(Forest::parse(d, domain)?, Forest::parse(d, range)?, perm)
    }
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.perm.iter().map(|x| x.to_string()).collect();
        write!(f, "{} -> {} [{}]", self.domain, self.range, p.join(","))
    }
}

/// Named elements of `V_{2,1}`.
pub mod standard {
    use super::*;

    fn forest(s: &str) -> Forest {
        Forest::parse(2, s).expect("valid literal")
    }

    /// Swaps the two halves.
    pub fn sigma() -> TreePair {
        TreePair::new(forest("(..)"), forest("(..)"), vec![1, 0]).unwrap()
    }

    /// The first Thompson generator `x_0` (also called `A`).
    pub fn x0() -> TreePair {
        TreePair::new(forest("((..).)"), forest("(.(..))"), vec![0, 1, 2]).unwrap()
    }

    /// Cyclic rotation of three leaves.
    pub fn c() -> TreePair {
        TreePair::new(forest("(.(..))"), forest("((..).)"), vec![1, 2, 0]).unwrap()
    }

    /// Transposition of the leaves `10` and `11`.
    pub fn pi1() -> TreePair {
        TreePair::new(forest("(.(..))"), forest("(.(..))"), vec![0, 2, 1]).unwrap()
    }

    pub fn all() -> Vec<(&'static str, TreePair)> {
        vec![("sigma", sigma()), ("x0", x0()), ("C", c()), ("pi1", pi1())]
    }
}

/// A random forest with `carets` carets added at uniformly chosen leaves.
pub fn random_forest<R: Rng>(rng: &mut R, d: u32, roots: u32, carets: usize) -> Forest {
    let mut f = Forest::trivial(d, roots);
    for _ in 0..carets {
        let leaves = f.leaves();
        let l = leaves.choose(rng).unwrap().clone();
        f.add_caret(&l);
    }
    f
}

/// A random reduced element of `V_{d,r}` with at most `max_carets` carets
/// per side before reduction.
pub fn random_element<R: Rng>(rng: &mut R, d: u32, r: u32, max_carets: usize) -> TreePair {
    let k = rng.gen_range(0..=max_carets);
    let dom = random_forest(rng, d, r, k);
    let k2 = if d == 1 { rng.gen_range(0..=max_carets) } else { k };
    let ran = random_forest(rng, d, r, k2);
    let mut perm: Vec<usize> = (0..dom.leaf_count()).collect();
    perm.shuffle(rng);
    TreePair::new(dom, ran, perm).unwrap()
}

/// A random address of the given depth.
pub fn random_address<R: Rng>(rng: &mut R, d: u32, r: u32, depth: usize) -> Address {
    Address {
        root: rng.gen_range(0..r),
        word: (0..depth).map(|_| rng.gen_range(0..d) as u8).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn addr(s: &str) -> Address {
        Address::parse(s).unwrap()
    }

    #[test]
    fn forest_round_trip() {
        let f = Forest::parse(2, "((..).)(..)").unwrap();
        assert_eq!(f.roots(), 2);
        assert_eq!(f.leaf_count(), 5);
        assert_eq!(f.to_string(), "((..).)(..)");
        assert_eq!(
            f.leaves(),
            vec![addr("0:00"), addr("0:01"), addr("0:1"), addr("1:0"), addr("1:1")]
        );
    }

    #[test]
    fn sigma_swaps_halves() {
        let s = standard::sigma();
        assert_eq!(s.act(&addr("0:0110")).unwrap(), addr("0:1110"));
        assert_eq!(s.act(&addr("0:1")).unwrap(), addr("0:0"));
        assert!(s.compose(&s).unwrap().is_identity());
        assert_eq!(s.inverse(), s);
        assert!(matches!(s.act(&addr("0:")), Err(Error::AddressTooShallow(_))));
    }

    #[test]
    fn expansion_reduces_back() {
        let id = TreePair::identity(2, 1);
        assert!(id.expand(0).reduce().is_identity());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_element(&mut rng, 3, 2, 4);
            let mut e = g.clone();
            for _ in 0..3 {
                let n = e.domain().leaf_count();
                e = e.expand(rng.gen_range(0..n));
            }
            assert_eq!(e.reduce(), g);
        }
    }

    #[test]
    fn compose_matches_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 1..=3 {
            for r in 1..=3 {
                for _ in 0..20 {
                    let g = random_element(&mut rng, d, r, 4);
                    let h = random_element(&mut rng, d, r, 4);
                    let gh = g.compose(&h).unwrap();
                    let a = random_address(&mut rng, d, r, 12);
                    assert_eq!(gh.act(&a).unwrap(), g.act(&h.act(&a).unwrap()).unwrap());
                    assert!(g.compose(&g.inverse()).unwrap().is_identity());
                }
            }
        }
    }

    #[test]
    fn mismatch_is_reported() {
        let a = TreePair::identity(2, 1);
        let b = TreePair::identity(3, 1);
        assert!(matches!(a.compose(&b), Err(Error::ParameterMismatch(_))));
    }
}
