//! Finite abstract bases and their rounded ideal completions.
//!
//! In a finite basis every ideal `I` has a member `m` with `I ⊆ ↓m` (fold
//! the binary upper bounds along `I`), hence `I = ↓m` and `m ≺ m`. So there
//! are at most as many ideals as basis elements.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expo::enumerate_monotone_maps;
use crate::finposet::{EpPair, FinPoset, MonoMap};
use crate::indcomp::Family;
use crate::subset::Subset;
use crate::waybelow::{check_small_basis, check_small_compact_basis, way_below, BasisMap};

/// Largest carrier whose subsets are scanned for ideals.
pub const IDEAL_SCAN_LIMIT: usize = 12;

/// A finite carrier with an explicit relation `≺`, not validated on
/// construction.
#[derive(Clone, PartialEq, Eq)]
pub struct AbstractBasis {
    names: Vec<String>,
    prec: Vec<bool>,
}

/// The first law that fails, by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisCounterexample {
    Transitivity { a: usize, b: usize, c: usize },
    Nullary { a: usize },
    Binary { a1: usize, a2: usize, b: usize },
}

impl BasisCounterexample {
    pub fn describe(&self, basis: &AbstractBasis) -> String {
        let n = |i: usize| basis.name(i);
        match *self {
            Self::Transitivity { a, b, c } => format!(
                "transitivity fails: {} < {} < {} but not {} < {}",
                n(a),
                n(b),
                n(c),
                n(a),
                n(c)
            ),
            Self::Nullary { a } => {
                format!("nullary interpolation fails: nothing is below {}", n(a))
            }
            Self::Binary { a1, a2, b } => format!(
                "binary interpolation fails: {} and {} are below {} with nothing between",
                n(a1),
                n(a2),
                n(b)
            ),
        }
    }
}

impl AbstractBasis {
    pub fn from_fn<F: Fn(usize, usize) -> bool>(names: Vec<String>, prec: F) -> Result<Self> {
        check_unique(&names)?;
        let n = names.len();
        let prec = (0..n * n).map(|k| prec(k / n, k % n)).collect();
        Ok(Self { names, prec })
    }

    /// From explicit `a < b` pairs given by name.
    pub fn from_pairs<S: AsRef<str>, T: AsRef<str>>(
        elements: &[S],
        pairs: &[(T, T)],
    ) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        check_unique(&names)?;
        let n = names.len();
        let idx = |s: &str| {
            names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let mut prec = vec![false; n * n];
        for (a, b) in pairs {
            prec[idx(a.as_ref())? * n + idx(b.as_ref())?] = true;
        }
        Ok(Self { names, prec })
    }

    /// The order of a poset read as a (reflexive) basis relation.
    pub fn from_poset(p: &FinPoset) -> Self {
        Self::from_fn(p.names().to_vec(), |a, b| p.leq(a, b)).expect("poset names are unique")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn prec(&self, a: usize, b: usize) -> bool {
        self.prec[a * self.len() + b]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n * n)
            .filter(|&k| self.prec[k])
            .map(|k| (k / n, k % n))
            .collect()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|a| self.prec(a, a))
    }

    pub fn format_subset(&self, s: &Subset) -> String {
        let names: Vec<&str> = s.iter().map(|a| self.name(a)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl fmt::Debug for AbstractBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.name(a), self.name(b)))
            .collect();
        write!(f, "AbstractBasis({:?}; {})", self.names, pairs.join(" "))
    }
}

fn check_unique(names: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::DuplicateElement(n.clone()));
        }
    }
    Ok(())
}

/// Transitivity, nullary and binary interpolation, by exhaustion.
pub fn validate_abstract_basis(b: &AbstractBasis) -> Option<BasisCounterexample> {
    let n = b.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if b.prec(x, y) && b.prec(y, z) && !b.prec(x, z) {
                    return Some(BasisCounterexample::Transitivity { a: x, b: y, c: z });
                }
            }
        }
    }
    for a in 0..n {
        if !(0..n).any(|c| b.prec(c, a)) {
            return Some(BasisCounterexample::Nullary { a });
        }
    }
    for top in 0..n {
        for a1 in 0..n {
            for a2 in 0..n {
                if b.prec(a1, top)
                    && b.prec(a2, top)
                    && !(0..n).any(|a| b.prec(a1, a) && b.prec(a2, a) && b.prec(a, top))
                {
                    return Some(BasisCounterexample::Binary { a1, a2, b: top });
                }
            }
        }
    }
    None
}

/// `↓x = {a | a ≺ x}`.
pub fn principal_ideal(b: &AbstractBasis, x: usize) -> Subset {
    Subset::from_indices(b.len(), (0..b.len()).filter(|&a| b.prec(a, x)))
}

pub fn is_lower_set(b: &AbstractBasis, s: &Subset) -> bool {
    s.iter()
        .all(|x| (0..b.len()).all(|a| !b.prec(a, x) || s.contains(a)))
}

/// Inhabited, and every pair has a common `≺`-upper bound inside.
pub fn is_directed_wrt(b: &AbstractBasis, s: &Subset) -> bool {
    !s.is_empty()
        && s.iter().all(|x| {
            s.iter()
                .all(|y| s.iter().any(|z| b.prec(x, z) && b.prec(y, z)))
        })
}

pub fn is_ideal(b: &AbstractBasis, s: &Subset) -> bool {
    is_lower_set(b, s) && is_directed_wrt(b, s)
}

pub fn is_rounded(b: &AbstractBasis, s: &Subset) -> bool {
    s.iter().all(|x| s.iter().any(|y| b.prec(x, y)))
}

/// Every ideal, in increasing bitmask order.
pub fn enumerate_ideals(b: &AbstractBasis) -> Result<Vec<Subset>> {
    if b.len() > IDEAL_SCAN_LIMIT {
        return Err(Error::CarrierTooLarge {
            size: b.len(),
            limit: IDEAL_SCAN_LIMIT,
        });
    }
    Ok(Subset::all(b.len()).filter(|s| is_ideal(b, s)).collect())
}

/// The ideals of a basis ordered by inclusion.
#[derive(Debug, Clone)]
pub struct IdealPoset {
    pub basis: AbstractBasis,
    pub ideals: Vec<Subset>,
    pub poset: Arc<FinPoset>,
}

impl IdealPoset {
    pub fn index_of_ideal(&self, s: &Subset) -> Option<usize> {
        self.ideals.iter().position(|i| i == s)
    }

    /// `b ↦ ↓b` as a basis of the completion.
    pub fn principal_basis(&self) -> BasisMap {
        let into = (0..self.basis.len())
            .map(|x| {
                self.index_of_ideal(&principal_ideal(&self.basis, x))
                    .expect("principal ideals of a valid basis are ideals")
            })
            .collect();
        BasisMap::new(self.basis.names().to_vec(), into).expect("basis names are unique")
    }
}

/// Requires a valid basis; ideal names are their member sets.
pub fn idl_poset(b: &AbstractBasis) -> Result<IdealPoset> {
    if let Some(c) = validate_abstract_basis(b) {
        return Err(Error::InvalidBasis(c.describe(b)));
    }
    let ideals = enumerate_ideals(b)?;
    let names = ideals.iter().map(|s| b.format_subset(s)).collect();
    let poset = FinPoset::from_leq(names, |i, j| ideals[i].is_subset_of(&ideals[j]))?;
    Ok(IdealPoset {
        basis: b.clone(),
        ideals,
        poset: Arc::new(poset),
    })
}

/// The union of every directed family of ideals is again an ideal.
pub fn union_of_directed_ideals_check(idl: &IdealPoset) -> Result<bool> {
    let n = idl.basis.len();
    Ok(idl.poset.directed_subsets()?.iter().all(|fam| {
        let union = fam
            .iter()
            .fold(Subset::empty(n), |acc, i| acc.union(&idl.ideals[i]));
        is_ideal(&idl.basis, &union)
    }))
}

/// Some `c ∈ J` has `I ⊆ ↓c`.
pub fn idl_way_below(b: &AbstractBasis, i: &Subset, j: &Subset) -> bool {
    j.iter().any(|c| i.is_subset_of(&principal_ideal(b, c)))
}

/// Some `a ≺ c` has `I ⊆ ↓a ⊆ ↓c ⊆ J`.
pub fn idl_way_below_interpolated(b: &AbstractBasis, i: &Subset, j: &Subset) -> bool {
    (0..b.len()).any(|a| {
        let da = principal_ideal(b, a);
        i.is_subset_of(&da)
            && (0..b.len()).any(|c| {
                let dc = principal_ideal(b, c);
                b.prec(a, c) && da.is_subset_of(&dc) && dc.is_subset_of(j)
            })
    })
}

/// Principal ideals form a small basis of the completion, and a small
/// compact one when `≺` is reflexive. Also checks that each ideal is the
/// directed supremum of its principal ideals.
pub fn idl_basis_check(b: &AbstractBasis) -> Result<bool> {
    let idl = idl_poset(b)?;
    let p = &idl.poset;
    let beta = idl.principal_basis();
    if !check_small_basis(p, &beta) {
        return Ok(false);
    }
    let sups_ok = idl.ideals.iter().enumerate().all(|(k, members)| {
        let fam = Family::from_values(members.iter().map(|x| beta.value(x)).collect());
        fam.sup(p) == Ok(k)
    });
    if !sups_ok {
        return Ok(false);
    }
    if b.is_reflexive() {
        return Ok(check_small_compact_basis(p, &beta)
            && beta.images().iter().all(|&i| way_below(p, i, i)));
    }
    Ok(true)
}

/// `f̄(I) = ⊔ f(I)`, for `f` monotone from `(B, ≺)` to `D`.
pub fn mediating_map(b: &AbstractBasis, f: &[usize], target: Arc<FinPoset>) -> Result<MonoMap> {
    if f.len() != b.len() {
        return Err(Error::ShapeMismatch(format!(
            "map has {} values for {} basis elements",
            f.len(),
            b.len()
        )));
    }
    if let Some(&v) = f.iter().find(|&&v| v >= target.len()) {
        return Err(Error::UnknownElement(format!("element index {v}")));
    }
    for (x, y) in b.pairs() {
        if !target.leq(f[x], f[y]) {
            return Err(Error::NotMonotone(format!(
                "{} < {} but {} is not below {}",
                b.name(x),
                b.name(y),
                target.name(f[x]),
                target.name(f[y])
            )));
        }
    }
    let idl = idl_poset(b)?;
    let graph = idl
        .ideals
        .iter()
        .map(|members| {
            let image = Subset::from_indices(target.len(), members.iter().map(|x| f[x]));
            target.directed_sup(&image)
        })
        .collect::<Result<Vec<_>>>()?;
    MonoMap::new(idl.poset.clone(), target, graph)
}

/// On a reflexive basis, `f̄` is the only continuous map with `f̄(↓b) = f(b)`.
/// Counts the continuous extensions by enumerating all monotone maps.
pub fn mediating_map_unique_check(
    b: &AbstractBasis,
    f: &[usize],
    target: Arc<FinPoset>,
) -> Result<bool> {
    if !b.is_reflexive() {
        return Err(Error::PreconditionViolated(
            "uniqueness is only claimed for reflexive bases".into(),
        ));
    }
    let fbar = mediating_map(b, f, target.clone())?;
    let idl = idl_poset(b)?;
    let beta = idl.principal_basis();
    let extensions: Vec<MonoMap> = enumerate_monotone_maps(&idl.poset, &target)?
        .into_iter()
        .filter(|g| g.is_scott_continuous())
        .filter(|g| (0..b.len()).all(|x| g.apply(beta.value(x)) == f[x]))
        .collect();
    Ok(extensions.len() == 1 && extensions[0] == fbar)
}

/// Joins over lists of a family's indices, one index per distinct value.
///
/// Lists are explored breadth-first in canonical order and a list is kept
/// only when its join is new, so each value is labelled by its shortest,
/// lexicographically least list. Joins are idempotent and commutative, so
/// no value reachable from a longer list is lost.
#[derive(Debug, Clone)]
pub struct Directification {
    lists: Vec<Vec<usize>>,
    values: Vec<usize>,
    source_labels: Vec<String>,
    source_values: Vec<usize>,
    bottom: usize,
}

impl Directification {
    pub fn lists(&self) -> &[Vec<usize>] {
        &self.lists
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The join of an arbitrary list of source indices.
    pub fn eval(&self, p: &FinPoset, list: &[usize]) -> Result<usize> {
        list.iter().try_fold(self.bottom, |acc, &i| {
            let v = *self
                .source_values
                .get(i)
                .ok_or_else(|| Error::UnknownElement(format!("family index {i}")))?;
            p.join(acc, v)
                .ok_or_else(|| Error::NoJoins(format!("{} and {}", p.name(acc), p.name(v))))
        })
    }

    pub fn list_label(&self, list: &[usize]) -> String {
        let parts: Vec<&str> = list.iter().map(|&i| self.source_labels[i].as_str()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Index of the entry whose join is `v`.
    pub fn index_of_value(&self, v: usize) -> Option<usize> {
        self.values.iter().position(|&w| w == v)
    }

    pub fn family(&self) -> Family {
        let labels = self.lists.iter().map(|l| self.list_label(l)).collect();
        Family::new(labels, self.values.clone()).expect("shortest lists are distinct")
    }

    pub fn basis(&self) -> BasisMap {
        let f = self.family();
        BasisMap::new(f.labels().to_vec(), f.values().to_vec()).expect("labels are unique")
    }
}

pub fn directify(p: &FinPoset, fam: &Family) -> Result<Directification> {
    let bottom = p
        .bottom()
        .ok_or_else(|| Error::NoJoins("no least element".into()))?;
    if !p.is_lattice() {
        return Err(Error::NoJoins("poset is not a finite lattice".into()));
    }
    let mut lists = vec![Vec::new()];
    let mut values = vec![bottom];
    let mut seen = vec![false; p.len()];
    seen[bottom] = true;
    let mut head = 0;
    while head < lists.len() {
        for (i, &v) in fam.values().iter().enumerate() {
            let j = p.join(values[head], v).expect("lattice joins exist");
            if !seen[j] {
                seen[j] = true;
                let mut l = lists[head].clone();
                l.push(i);
                lists.push(l);
                values.push(j);
            }
        }
        head += 1;
    }
    Ok(Directification {
        lists,
        values,
        source_labels: fam.labels().to_vec(),
        source_values: fam.values().to_vec(),
        bottom,
    })
}

fn basis_from<F: Fn(usize, usize) -> bool>(
    d: &FinPoset,
    beta: &BasisMap,
    rel: F,
) -> Result<AbstractBasis> {
    if let Some(v) = crate::waybelow::small_basis_violation(d, beta) {
        return Err(Error::NotABasis(format!(
            "at `{}`: {}",
            d.name(v.element),
            v.reason
        )));
    }
    AbstractBasis::from_fn(beta.labels().to_vec(), |a, b| {
        rel(beta.value(a), beta.value(b))
    })
}

/// `b ≺ c` iff `β(b) ≪ β(c)`.
pub fn basis_from_waybelow(d: &FinPoset, beta: &BasisMap) -> Result<AbstractBasis> {
    basis_from(d, beta, |x, y| way_below(d, x, y))
}

/// `b ≺ c` iff `β(b) ⊑ β(c)`.
pub fn basis_from_order(d: &FinPoset, beta: &BasisMap) -> Result<AbstractBasis> {
    basis_from(d, beta, |x, y| d.leq(x, y))
}

/// The maps `x ↦ ↡_β x` into a completion and `I ↦ ⊔β(I)` back.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub idl: IdealPoset,
    pub section: MonoMap,
    pub retraction: MonoMap,
}

impl Presentation {
    pub fn ep_pair(&self) -> Result<EpPair> {
        EpPair::new(self.section.clone(), self.retraction.clone())
    }

    pub fn is_isomorphism(&self) -> bool {
        let back = self.retraction.then(&self.section);
        self.section.then(&self.retraction).is_ok_and(|m| m.is_identity())
            && back.is_ok_and(|m| m.is_identity())
    }
}

fn presentation(d: Arc<FinPoset>, beta: &BasisMap, b: AbstractBasis) -> Result<Presentation> {
    let idl = idl_poset(&b)?;
    let section_graph = d
        .elements()
        .map(|x| {
            let fib = beta.way_below_indices(&d, x);
            idl.index_of_ideal(&fib).ok_or_else(|| {
                Error::NotABasis(format!("way-below fibre of `{}` is not an ideal", d.name(x)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let retraction_graph = idl
        .ideals
        .iter()
        .map(|members| {
            let image = Subset::from_indices(d.len(), members.iter().map(|x| beta.value(x)));
            d.directed_sup(&image)
        })
        .collect::<Result<Vec<_>>>()?;
    let section = MonoMap::new(d.clone(), idl.poset.clone(), section_graph)?;
    let retraction = MonoMap::new(idl.poset.clone(), d, retraction_graph)?;
    Ok(Presentation {
        idl,
        section,
        retraction,
    })
}

/// `x ↦ ↡_β x` into `Idl(B, ≪_β)`, with the supremum map back.
pub fn continuous_presentation(d: Arc<FinPoset>, beta: &BasisMap) -> Result<Presentation> {
    let b = basis_from_waybelow(&d, beta)?;
    presentation(d, beta, b)
}

/// `x ↦ ↡_β x` into `Idl(B, ⊑_β)`, with the supremum map back.
pub fn algebraic_presentation(d: Arc<FinPoset>, beta: &BasisMap) -> Result<Presentation> {
    let b = basis_from_order(&d, beta)?;
    presentation(d, beta, b)
}

/// `D ≅ Idl(B, ≪_β)` via `↡_β`. The inflation `I ⊆ ↡_β ⊔β(I)` and the
/// deflation `↡_β ⊔β(I) ⊆ I` are checked separately before the round trip.
pub fn idl_iso_continuous_check(d: Arc<FinPoset>, beta: &BasisMap) -> bool {
    let Ok(pres) = continuous_presentation(d.clone(), beta) else {
        return false;
    };
    let sandwich = pres.idl.ideals.iter().enumerate().all(|(k, members)| {
        let x = pres.retraction.apply(k);
        members.is_subset_of(&beta.way_below_indices(&d, x))
            && beta.way_below_indices(&d, x).is_subset_of(members)
            && is_rounded(&pres.idl.basis, members)
    });
    sandwich && pres.is_isomorphism()
}

/// `↡_β` and the supremum map form an ep-pair into `Idl(B, ⊑_β)`, which is
/// an isomorphism when `β` is a small compact basis.
pub fn idl_iso_algebraic_check(d: Arc<FinPoset>, beta: &BasisMap) -> bool {
    let Ok(pres) = algebraic_presentation(d.clone(), beta) else {
        return false;
    };
    let ep_ok = pres.ep_pair().is_ok_and(|ep| ep.is_valid());
    ep_ok && (!check_small_compact_basis(&d, beta) || pres.is_isomorphism())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> FinPoset {
        FinPoset::chain(&["a", "b"]).unwrap()
    }

    #[test]
    fn validation_examples() {
        let refl = AbstractBasis::from_poset(&two());
        assert_eq!(validate_abstract_basis(&refl), None);
        let empty = AbstractBasis::from_pairs::<&str, &str>(&[], &[]).unwrap();
        assert_eq!(validate_abstract_basis(&empty), None);
        let strict = AbstractBasis::from_pairs(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(
            validate_abstract_basis(&strict),
            Some(BasisCounterexample::Nullary { a: 0 })
        );
        assert!(matches!(
            AbstractBasis::from_pairs(&["a", "a"], &[("a", "a")]),
            Err(Error::DuplicateElement(_))
        ));
    }

    #[test]
    fn ideals_of_chain_and_antichain() {
        let b = AbstractBasis::from_poset(&two());
        let ideals = enumerate_ideals(&b).unwrap();
        assert_eq!(ideals, vec![Subset::from_indices(2, [0]), Subset::full(2)]);
        let anti = AbstractBasis::from_poset(&FinPoset::antichain(&["a", "b"]).unwrap());
        let ideals = enumerate_ideals(&anti).unwrap();
        assert_eq!(
            ideals,
            vec![Subset::from_indices(2, [0]), Subset::from_indices(2, [1])]
        );
        assert!(!is_ideal(&b, &Subset::empty(2)));
        assert!(!is_ideal(&b, &Subset::singleton(2, 1)));
    }

    #[test]
    fn principal_ideals() {
        let b = AbstractBasis::from_poset(&two());
        assert!(principal_ideal(&b, 1).contains(1));
        assert!(principal_ideal(&b, 0).is_subset_of(&principal_ideal(&b, 1)));
        assert!(is_ideal(&b, &principal_ideal(&b, 0)));
    }

    #[test]
    fn idl_of_chain_is_chain() {
        let b = AbstractBasis::from_poset(&two());
        let idl = idl_poset(&b).unwrap();
        assert_eq!(idl.poset.len(), 2);
        assert!(idl.poset.leq(0, 1));
        assert!(union_of_directed_ideals_check(&idl).unwrap());
        assert!(idl_basis_check(&b).unwrap());
        let whole = Subset::full(2);
        assert!(idl_way_below(&b, &whole, &whole));
        assert!(idl_way_below_interpolated(&b, &whole, &whole));
    }

    #[test]
    fn idl_rejects_invalid_basis() {
        let strict = AbstractBasis::from_pairs(&["a", "b"], &[("a", "b")]).unwrap();
        assert!(matches!(idl_poset(&strict), Err(Error::InvalidBasis(_))));
    }

    #[test]
    fn mediating_map_examples() {
        let p = Arc::new(two());
        let b = AbstractBasis::from_poset(&p);
        let fbar = mediating_map(&b, &[0, 1], p.clone()).unwrap();
        assert_eq!(fbar.graph(), &[0, 1]);
        let constant = mediating_map(&b, &[1, 1], p.clone()).unwrap();
        assert_eq!(constant.graph(), &[1, 1]);
        assert!(mediating_map_unique_check(&b, &[0, 1], p.clone()).unwrap());
        assert!(matches!(
            mediating_map(&b, &[1, 0], p.clone()),
            Err(Error::NotMonotone(_))
        ));
    }

    #[test]
    fn directify_examples() {
        let p = FinPoset::from_covers(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap();
        let fam = Family::from_values(vec![1, 2]);
        let d = directify(&p, &fam).unwrap();
        assert_eq!(d.values(), &[0, 1, 2, 3]);
        assert_eq!(d.lists()[0], Vec::<usize>::new());
        assert_eq!(d.lists()[3], vec![0, 1]);
        assert_eq!(d.eval(&p, &[]).unwrap(), 0);
        assert_eq!(d.eval(&p, &[1, 0, 1]).unwrap(), 3);
        assert!(d.family().is_directed(&p));
        assert_eq!(d.family().sup(&p), Ok(3));

        let anti = FinPoset::antichain(&["a", "b"]).unwrap();
        assert!(matches!(
            directify(&anti, &Family::constant(0)),
            Err(Error::NoJoins(_))
        ));
    }

    #[test]
    fn bases_from_small_basis_coincide_on_finite_posets() {
        let p = two();
        let id = BasisMap::identity(&p);
        let wb = basis_from_waybelow(&p, &id).unwrap();
        let ord = basis_from_order(&p, &id).unwrap();
        assert_eq!(wb, ord);
        assert_eq!(validate_abstract_basis(&wb), None);
    }

    #[test]
    fn iso_checks_on_chain() {
        let p = Arc::new(two());
        let id = BasisMap::identity(&p);
        assert!(idl_iso_continuous_check(p.clone(), &id));
        assert!(idl_iso_algebraic_check(p.clone(), &id));
        let one = Arc::new(FinPoset::chain(&["x"]).unwrap());
        assert!(idl_iso_continuous_check(one.clone(), &BasisMap::identity(&one)));
        let pres = algebraic_presentation(p, &id).unwrap();
        assert!(pres.section.then(&pres.retraction).unwrap().is_identity());
    }
}
