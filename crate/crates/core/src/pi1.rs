//! Bounded certificate for triviality of the fundamental group.
//!
//! The edge-path group is presented with one generator per edge outside a
//! spanning forest and one relator per triangle, then simplified by Tietze
//! moves under a fixed step budget.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::complex::{SimplicialComplex, Vertex};
use crate::homology::homology_unreduced;

pub const TIETZE_BUDGET: usize = 10_000;
const MAX_RELATOR_LEN: usize = 4_096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pi1Certificate {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for Pi1Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Pi1Certificate::Yes => "yes",
            Pi1Certificate::No => "no",
            Pi1Certificate::Unknown => "unknown",
        })
    }
}

/// Letters are `±(g + 1)` for generator `g`.
type Word = Vec<i32>;

#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

/// Edge-path presentation (all components at once).
pub fn edge_path_presentation(x: &SimplicialComplex) -> Presentation {
    let verts: Vec<Vertex> = x.vertices().into_iter().collect();
    let mut parent: BTreeMap<Vertex, Vertex> = verts.iter().map(|v| (*v, *v)).collect();
    fn find(p: &mut BTreeMap<Vertex, Vertex>, v: Vertex) -> Vertex {
        let mut r = v;
        while p[&r] != r {
            r = p[&r];
        }
        let mut c = v;
        while p[&c] != r {
            let n = p[&c];
            p.insert(c, r);
            c = n;
        }
        r
    }
    let edges = x.simplices_of_dim(1);
    let mut gen_of: BTreeMap<(Vertex, Vertex), i32> = BTreeMap::new();
    let mut next = 0;
    for e in &edges {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent.insert(ra, rb);
        } else {
            next += 1;
            gen_of.insert((a, b), next);
        }
    }
    let letter = |a: Vertex, b: Vertex| gen_of.get(&(a, b)).copied();
    let relators = x
        .simplices_of_dim(2)
        .iter()
        .map(|t| {
            let v = t.vertices();
            let mut w = Vec::new();
            w.extend(letter(v[0], v[1]));
            w.extend(letter(v[1], v[2]));
            w.extend(letter(v[0], v[2]).map(|g| -g));
            w
        })
        .collect();
    Presentation {
        generators: next as usize,
        relators,
    }
}

fn free_reduce(w: &mut Word) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w.iter() {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    // cyclic reduction
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && out[lo] == -out[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    *w = out[lo..hi].to_vec();
}

fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

/// Runs Tietze elimination; returns the number of surviving generators, or
/// `None` if the budget ran out.
pub fn simplify(p: &Presentation, budget: usize) -> Option<usize> {
    let mut rels: Vec<Word> = p.relators.clone();
    let mut alive: BTreeSet<i32> = (1..=p.generators as i32).collect();
    let mut steps = 0usize;
    loop {
        for r in rels.iter_mut() {
            free_reduce(r);
        }
        rels.retain(|r| !r.is_empty());
        rels.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        rels.dedup();
        if alive.is_empty() {
            return Some(0);
        }
        // a relator in which some generator occurs exactly once
        let mut pick = None;
        'outer: for (ri, r) in rels.iter().enumerate() {
            let mut count: BTreeMap<i32, usize> = BTreeMap::new();
            for l in r {
                *count.entry(l.abs()).or_default() += 1;
            }
            for (pos, l) in r.iter().enumerate() {
                if count[&l.abs()] == 1 {
                    pick = Some((ri, pos));
                    break 'outer;
                }
            }
        }
        let Some((ri, pos)) = pick else {
            return Some(alive.len());
        };
        let r = rels.remove(ri);
        let x = r[pos];
        // r = u x w, so x = u^-1 w^-1
        let mut value = inverse(&r[..pos]);
        value.extend(inverse(&r[pos + 1..]));
        let (g, value) = if x > 0 {
            (x, value)
        } else {
            (-x, inverse(&value))
        };
        alive.remove(&g);
        for rel in rels.iter_mut() {
            if !rel.iter().any(|l| l.abs() == g) {
                continue;
            }
            steps += 1;
            if steps > budget {
                return None;
            }
            let mut out = Vec::new();
            for &l in rel.iter() {
                if l == g {
                    out.extend_from_slice(&value);
                } else if l == -g {
                    out.extend(inverse(&value));
                } else {
                    out.push(l);
                }
            }
            if out.len() > MAX_RELATOR_LEN {
                return None;
            }
            *rel = out;
        }
        steps += 1;
        if steps > budget {
            return None;
        }
    }
}

/// `Yes` if the presentation simplifies to the trivial group, `No` if the
/// first homology is nonzero, `Unknown` otherwise (including the empty
/// complex).
pub fn pi1_certificate(x: &SimplicialComplex) -> Pi1Certificate {
    if x.is_empty() {
        return Pi1Certificate::Unknown;
    }
    let p = edge_path_presentation(x);
    if simplify(&p, TIETZE_BUDGET) == Some(0) {
        return Pi1Certificate::Yes;
    }
    if !homology_unreduced(&x.skeleton(2)).degree(1).is_zero() {
        Pi1Certificate::No
    } else {
        Pi1Certificate::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_is_simply_connected() {
        let s2 = SimplicialComplex::simplex_boundary([0, 1, 2, 3]);
        assert_eq!(pi1_certificate(&s2), Pi1Certificate::Yes);
    }

    #[test]
    fn circle_is_not() {
        let s1 = SimplicialComplex::simplex_boundary([0, 1, 2]);
        assert_eq!(pi1_certificate(&s1), Pi1Certificate::No);
    }

    #[test]
    fn empty_is_unknown() {
        assert_eq!(pi1_certificate(&SimplicialComplex::empty()), Pi1Certificate::Unknown);
    }

    #[test]
    fn free_reduction_is_cyclic() {
        let mut w = vec![1, 2, -2, 3, -1];
        free_reduce(&mut w);
        assert_eq!(w, vec![3]);
    }
}
