//! Seeded generators for posets, abstract bases, lattices, ep-pairs and
//! dyadic pairs. Identical seeds give identical outputs.

use std::ops::RangeInclusive;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dyadics::{random_dyadic, Dyadic};
use crate::finposet::{EpPair, FinPoset, MonoMap};
use crate::idealcomp::{validate_abstract_basis, AbstractBasis};
use crate::subset::Subset;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random DAG on `p0 … p{n-1}` (edges only from lower to higher index,
/// each with a per-poset density) closed under transitivity.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FinPoset {
    let density: f64 = rng.gen_range(0.15..0.6);
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                covers.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    FinPoset::from_covers(&names, &covers).expect("index-increasing edges are acyclic")
}

/// `count` posets with sizes drawn from `2..=max_size`.
pub fn generate_corpus(seed: u64, count: usize, max_size: usize) -> Vec<FinPoset> {
    generate_corpus_in(seed, count, 2.min(max_size)..=max_size)
}

pub fn generate_corpus_in(seed: u64, count: usize, sizes: RangeInclusive<usize>) -> Vec<FinPoset> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(sizes.clone());
            random_poset(&mut r, n)
        })
        .collect()
}

/// A valid abstract basis on `n` elements. Reflexive bases are random
/// partial orders; the others drop the loops at some non-minimal elements
/// of such an order, resampled until interpolation still holds and at
/// least one loop is gone (falling back to the order after 64 tries).
pub fn random_abstract_basis<R: Rng + ?Sized>(rng: &mut R, n: usize, reflexive: bool) -> AbstractBasis {
    let p = random_poset(rng, n);
    let order = AbstractBasis::from_poset(&p);
    if reflexive {
        return order;
    }
    let droppable: Vec<usize> = p
        .elements()
        .filter(|&x| p.elements().any(|y| p.lt(y, x)))
        .collect();
    for _ in 0..64 {
        let dropped: Vec<bool> = (0..n)
            .map(|x| droppable.contains(&x) && rng.gen_bool(0.5))
            .collect();
        if !dropped.iter().any(|&d| d) {
            continue;
        }
        let b = AbstractBasis::from_fn(p.names().to_vec(), |a, c| {
            p.leq(a, c) && !(a == c && dropped[a])
        })
        .expect("names are unique");
        if validate_abstract_basis(&b).is_none() {
            return b;
        }
    }
    order
}

/// `count` bases with carriers in `1..=max_size`, alternating reflexive and
/// non-reflexive.
pub fn generate_bases(seed: u64, count: usize, max_size: usize) -> Vec<AbstractBasis> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let n = r.gen_range(1..=max_size);
            random_abstract_basis(&mut r, n, i % 2 == 0)
        })
        .collect()
}

/// A random finite lattice with carrier in `sizes`, by rejection.
pub fn random_lattice<R: Rng + ?Sized>(rng: &mut R, sizes: RangeInclusive<usize>) -> FinPoset {
    loop {
        let n = rng.gen_range(sizes.clone());
        let p = random_poset(rng, n);
        if p.is_lattice() {
            return p;
        }
    }
}

pub fn generate_lattice_pairs(seed: u64, count: usize, max_size: usize) -> Vec<(FinPoset, FinPoset)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let d = random_lattice(&mut r, 1..=max_size);
            let e = random_lattice(&mut r, 1..=max_size);
            (d, e)
        })
        .collect()
}

/// A random ep-pair `S ⊲ E`: `E` is a random poset with a bottom added,
/// `S ∋ ⊥` a subset in which every `y` has a greatest member below it,
/// the embedding is inclusion and the projection picks that member.
pub fn random_ep_pair<R: Rng + ?Sized>(rng: &mut R, max_size: usize) -> EpPair {
    let n = rng.gen_range(1..=max_size.saturating_sub(1).max(1));
    let base = random_poset(rng, n);
    let mut names = vec!["bot".to_string()];
    names.extend(base.names().iter().cloned());
    let e = Arc::new(
        FinPoset::from_leq(names, |a, b| a == 0 || (b != 0 && base.leq(a - 1, b - 1)))
            .expect("adding a bottom keeps a partial order"),
    );
    loop {
        let mut members: Vec<usize> = e.elements().skip(1).filter(|_| rng.gen_bool(0.5)).collect();
        members.push(0);
        let s = Subset::from_indices(e.len(), members);
        let best: Option<Vec<usize>> = e
            .elements()
            .map(|y| e.greatest(&s.intersection(&e.down_set(y))))
            .collect();
        let Some(best) = best else { continue };
        let sv = s.to_vec();
        let d = Arc::new(e.induced(&s));
        let embed = MonoMap::new(d.clone(), e.clone(), sv.clone()).expect("inclusion is monotone");
        let project_graph = best
            .iter()
            .map(|b| sv.iter().position(|x| x == b).expect("best lies in s"))
            .collect();
        let project = MonoMap::new(e.clone(), d, project_graph).expect("projection is monotone");
        return EpPair::new(embed, project).expect("shapes align");
    }
}

pub fn generate_ep_pairs(seed: u64, count: usize, max_size: usize) -> Vec<EpPair> {
    let mut r = rng(seed);
    (0..count).map(|_| random_ep_pair(&mut r, max_size)).collect()
}

pub fn generate_dyadic_pairs(seed: u64, count: usize, max_depth: usize) -> Vec<(Dyadic, Dyadic)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| (random_dyadic(&mut r, max_depth), random_dyadic(&mut r, max_depth)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible_and_bounded() {
        let a = generate_corpus(0, 20, 7);
        let b = generate_corpus(0, 20, 7);
        assert_eq!(a, b);
        assert!(a.iter().all(|p| (2..=7).contains(&p.len())));
        assert_ne!(generate_corpus(1, 20, 7), a);
    }

    #[test]
    fn bases_are_valid_and_half_reflexive() {
        let bases = generate_bases(3, 40, 5);
        assert!(bases.iter().all(|b| validate_abstract_basis(b).is_none()));
        assert!(bases.iter().step_by(2).all(|b| b.is_reflexive()));
        assert!(bases.iter().skip(1).step_by(2).any(|b| !b.is_reflexive()));
    }

    #[test]
    fn ep_pairs_are_valid() {
        for ep in generate_ep_pairs(5, 30, 6) {
            assert!(ep.is_valid());
            assert!(ep.large().len() <= 6);
        }
    }

    #[test]
    fn lattice_pairs_are_lattices() {
        for (d, e) in generate_lattice_pairs(2, 10, 4) {
            assert!(d.is_lattice() && e.is_lattice());
            assert!(d.len() <= 4 && e.len() <= 4);
        }
    }
}
