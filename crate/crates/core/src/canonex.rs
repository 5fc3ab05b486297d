//! Canonical examples with their small compact bases: the two-point
//! Sierpiński poset, flat liftings, and powerset lattices with the list
//! basis and Kuratowski induction.
//!
//! Truth values are modelled by the two-point chain; with a classical,
//! decidable metatheory nothing else distinguishes them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finposet::FinPoset;
use crate::subset::Subset;
use crate::waybelow::BasisMap;

/// Largest ground set for the powerset and Kuratowski checks.
pub const MAX_GROUND: usize = 8;

/// Largest ground set for the list basis, which has `Σ nᵏ` lists.
pub const MAX_LIST_GROUND: usize = 6;

/// A poset together with a small compact basis of it.
#[derive(Debug, Clone)]
pub struct Example {
    pub poset: Arc<FinPoset>,
    pub basis: BasisMap,
}

/// `⊥ ⊑ ⊤` with the basis `0 ↦ ⊥, 1 ↦ ⊤`.
pub fn sierpinski() -> Example {
    let poset = FinPoset::chain(&["bot", "top"]).expect("two names");
    Example {
        poset: Arc::new(poset),
        basis: BasisMap::new(vec!["0".into(), "1".into()], vec![0, 1]).expect("distinct labels"),
    }
}

/// `⊥` below `n` incomparable points `x0 … x{n-1}`, with basis labels
/// `inl` for `⊥` and `inr:xi` for the points.
pub fn lifting(n: usize) -> Example {
    let mut names = vec!["bot".to_string()];
    names.extend((0..n).map(|i| format!("x{i}")));
    let poset = FinPoset::from_leq(names.clone(), |a, b| a == b || a == 0).expect("flat order");
    let mut labels = vec!["inl".to_string()];
    labels.extend(names[1..].iter().map(|x| format!("inr:{x}")));
    Example {
        poset: Arc::new(poset),
        basis: BasisMap::new(labels, (0..=n).collect()).expect("distinct labels"),
    }
}

/// The subsets of `{x0, …, x{n-1}}` under inclusion, in bitmask order.
#[derive(Debug, Clone)]
pub struct PowersetLattice {
    pub ground: Vec<String>,
    pub poset: Arc<FinPoset>,
}

impl PowersetLattice {
    /// Element index of a subset of the ground set.
    pub fn element(&self, s: &Subset) -> usize {
        s.iter().map(|i| 1usize << i).sum()
    }

    pub fn subset(&self, x: usize) -> Subset {
        Subset::from_mask(self.ground.len(), x as u64)
    }
}

/// Lists over the ground set up to a length bound, mapped to their sets of
/// elements.
#[derive(Debug, Clone)]
pub struct ListBasis {
    pub lists: Vec<Vec<usize>>,
    pub basis: BasisMap,
}

fn subset_name(ground: &[String], mask: usize) -> String {
    let parts: Vec<&str> = (0..ground.len())
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| ground[i].as_str())
        .collect();
    format!("{{{}}}", parts.join(","))
}

pub fn powerset_lattice(n: usize) -> Result<PowersetLattice> {
    if n > MAX_GROUND {
        return Err(Error::CarrierTooLarge {
            size: n,
            limit: MAX_GROUND,
        });
    }
    let ground: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let names = (0..1usize << n).map(|m| subset_name(&ground, m)).collect();
    let poset = FinPoset::from_leq(names, |a, b| a & !b == 0)?;
    Ok(PowersetLattice {
        ground,
        poset: Arc::new(poset),
    })
}

/// All lists of length at most `max_len`, shortest first, then
/// lexicographic; labels look like `[x0,x1]`.
pub fn list_basis(p: &PowersetLattice, max_len: usize) -> ListBasis {
    let n = p.ground.len();
    let mut lists = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|l| {
                (0..n).map(move |x| {
                    let mut next = l.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
        lists.extend(layer.iter().cloned());
    }
    let labels = lists
        .iter()
        .map(|l| {
            let parts: Vec<&str> = l.iter().map(|&x| p.ground[x].as_str()).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    let into = lists
        .iter()
        .map(|l| l.iter().fold(0usize, |m, &x| m | (1 << x)))
        .collect();
    ListBasis {
        lists,
        basis: BasisMap::new(labels, into).expect("lists are distinct"),
    }
}

/// `𝒫(X)` for `|X| = n` with the list basis of lists of length at most `n`.
pub fn powerset(n: usize) -> Result<(PowersetLattice, ListBasis)> {
    if n > MAX_LIST_GROUND {
        return Err(Error::CarrierTooLarge {
            size: n,
            limit: MAX_LIST_GROUND,
        });
    }
    let p = powerset_lattice(n)?;
    let lb = list_basis(&p, n);
    Ok((p, lb))
}

/// Checks the three induction clauses for `prop` on subsets of an `n`-set,
/// reporting the first that fails, then confirms the conclusion by direct
/// evaluation on every subset.
pub fn kuratowski_induction<F: Fn(&Subset) -> bool>(prop: F, n: usize) -> Result<bool> {
    if n > MAX_GROUND {
        return Err(Error::CarrierTooLarge {
            size: n,
            limit: MAX_GROUND,
        });
    }
    if !prop(&Subset::empty(n)) {
        return Err(Error::ClauseViolation("fails on the empty set".into()));
    }
    for x in 0..n {
        if !prop(&Subset::singleton(n, x)) {
            return Err(Error::ClauseViolation(format!("fails on the singleton {{x{x}}}")));
        }
    }
    let all: Vec<Subset> = Subset::all(n).collect();
    let holds: Vec<bool> = all.iter().map(&prop).collect();
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            if holds[i] && holds[j] && !prop(&a.union(b)) {
                return Err(Error::ClauseViolation(format!(
                    "holds on {a:?} and {b:?} but not on their union"
                )));
            }
        }
    }
    Ok(holds.into_iter().all(|h| h))
}

/// The image of the list basis contains `∅` and every singleton, and
/// concatenation realises union.
pub fn kuratowski_union_singleton_check(n: usize) -> Result<bool> {
    let (p, lb) = powerset(n)?;
    let beta = &lb.basis;
    let image = Subset::from_indices(p.poset.len(), beta.images().iter().copied());
    let has_empty = image.contains(0);
    let has_singletons = (0..n).all(|x| image.contains(1 << x));
    let closed = image
        .iter()
        .all(|a| image.iter().all(|b| image.contains(a | b)));
    let set_of = |l: &[usize]| l.iter().fold(0usize, |m, &x| m | (1 << x));
    let concat = lb.lists.iter().all(|l1| {
        lb.lists.iter().all(|l2| {
            let joined: Vec<usize> = l1.iter().chain(l2).copied().collect();
            set_of(&joined) == set_of(l1) | set_of(l2)
        })
    });
    Ok(has_empty && has_singletons && closed && concat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waybelow::{check_small_compact_basis, compacts};

    #[test]
    fn sierpinski_basis() {
        let ex = sierpinski();
        assert!(check_small_compact_basis(&ex.poset, &ex.basis));
        assert_eq!(compacts(&ex.poset).to_vec(), vec![0, 1]);
    }

    #[test]
    fn lifting_shapes() {
        assert_eq!(lifting(0).poset.len(), 1);
        let one = lifting(1);
        assert!(one.poset.leq(0, 1));
        assert_eq!(one.basis.labels(), &["inl".to_string(), "inr:x0".to_string()]);
        let three = lifting(3);
        assert!(three.poset.is_pointed());
        assert_eq!(compacts(&three.poset).len(), 4);
        assert!(check_small_compact_basis(&three.poset, &three.basis));
    }

    #[test]
    fn powerset_examples() {
        let (p, lb) = powerset(3).unwrap();
        assert_eq!(p.poset.len(), 8);
        assert_eq!(lb.basis.len(), 1 + 3 + 9 + 27);
        assert!(check_small_compact_basis(&p.poset, &lb.basis));
        assert_eq!(p.poset.name(5), "{x0,x2}");
        assert_eq!(p.element(&p.subset(5)), 5);
        let (p0, lb0) = powerset(0).unwrap();
        assert_eq!(p0.poset.len(), 1);
        assert_eq!(lb0.basis.labels(), &["[]".to_string()]);
    }

    #[test]
    fn kuratowski_examples() {
        assert!(kuratowski_induction(|_| true, 3).unwrap());
        assert!(kuratowski_induction(|s| s.len() <= 3, 3).unwrap());
        assert!(matches!(
            kuratowski_induction(|s| s.is_empty(), 3),
            Err(Error::ClauseViolation(_))
        ));
        for n in 0..=4 {
            assert!(kuratowski_union_singleton_check(n).unwrap());
        }
    }
}
