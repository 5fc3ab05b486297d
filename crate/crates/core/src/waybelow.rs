//! The way-below relation, compactness, continuity data, small (compact)
//! bases, interpolation and transfer of bases along retracts.
//!
//! Smallness of the way-below fibres is automatic here: every carrier is
//! finite and every relation decidable, so only the directedness and
//! supremum clauses of a basis are computed. Where mere existence is
//! asserted (interpolants), a concrete witness is returned, first in the
//! canonical order.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::finposet::{FinPoset, MonoMap};
use crate::indcomp::Family;
use crate::subset::Subset;

/// `x ≪ y`: every directed `S` with `y ⊑ ⊔S` has a member above `x`.
///
/// A directed subset of a finite poset contains its supremum `m`, and any
/// member above `x` forces `x ⊑ m`, so `S` refutes `x ≪ y` exactly when the
/// principal subset `{m}` does. The search therefore runs over candidate
/// suprema only; [`way_below_exhaustive`] enumerates every directed subset.
pub fn way_below(p: &FinPoset, x: usize, y: usize) -> bool {
    !p.elements().any(|m| p.leq(y, m) && !p.leq(x, m))
}

/// `x ≪ y` by enumeration of all directed subsets of `p`.
pub fn way_below_exhaustive(p: &FinPoset, x: usize, y: usize) -> Result<bool> {
    let directed = p.directed_subsets()?;
    Ok(directed.iter().all(|s| {
        let sup = p.directed_sup(s).expect("enumerated subsets are directed");
        !p.leq(y, sup) || s.iter().any(|m| p.leq(x, m))
    }))
}

/// Name-based form of [`way_below`].
pub fn way_below_named(p: &FinPoset, x: &str, y: &str) -> Result<bool> {
    Ok(way_below(p, p.index_of(x)?, p.index_of(y)?))
}

pub fn is_compact(p: &FinPoset, x: usize) -> bool {
    way_below(p, x, x)
}

pub fn compacts(p: &FinPoset) -> Subset {
    Subset::from_indices(p.len(), p.elements().filter(|&x| is_compact(p, x)))
}

/// Every element is the directed supremum of the compact elements below it.
pub fn is_algebraic(p: &FinPoset) -> bool {
    let k = compacts(p);
    p.elements()
        .all(|x| p.directed_sup(&k.intersection(&p.down_set(x))) == Ok(x))
}

/// Compact elements are closed under the binary joins that exist.
pub fn compacts_closed_under_joins_check(p: &FinPoset) -> bool {
    let k = compacts(p).to_vec();
    k.iter().all(|&x| {
        k.iter()
            .all(|&y| p.join(x, y).is_none_or(|z| is_compact(p, z)))
    })
}

/// `α` is directed, has supremum `x`, and every `α_i ≪ x`.
pub fn approximates(p: &FinPoset, fam: &Family, x: usize) -> Result<bool> {
    let sup = fam.sup(p)?;
    Ok(sup == x && fam.values().iter().all(|&a| way_below(p, a, x)))
}

/// A directed approximating family for every element.
#[derive(Debug, Clone)]
pub struct ContinuityData {
    families: Vec<Family>,
}

impl ContinuityData {
    pub fn new(p: &FinPoset, families: Vec<Family>) -> Result<Self> {
        if families.len() != p.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} families for {} elements",
                families.len(),
                p.len()
            )));
        }
        Ok(Self { families })
    }

    pub fn family(&self, x: usize) -> &Family {
        &self.families[x]
    }

    /// `α_x = {x}`.
    pub fn singletons(p: &FinPoset) -> Self {
        Self {
            families: p.elements().map(Family::constant).collect(),
        }
    }

    /// `α_x = ↓x`.
    pub fn down_sets(p: &FinPoset) -> Self {
        Self {
            families: p
                .elements()
                .map(|x| Family::from_subset(&p.down_set(x)))
                .collect(),
        }
    }
}

pub fn check_continuity_data(p: &FinPoset, cd: &ContinuityData) -> bool {
    cd.families.len() == p.len()
        && p.elements()
            .all(|x| approximates(p, &cd.families[x], x).unwrap_or(false))
}

/// Continuity data whose families consist of compact elements.
pub fn check_algebraicity_data(p: &FinPoset, cd: &ContinuityData) -> bool {
    check_continuity_data(p, cd)
        && cd
            .families
            .iter()
            .all(|f| f.values().iter().all(|&k| is_compact(p, k)))
}

/// A map `β : B → P` from a set of basis labels into a host poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisMap {
    labels: Vec<String>,
    into: Vec<usize>,
}

impl BasisMap {
    pub fn new(labels: Vec<String>, into: Vec<usize>) -> Result<Self> {
        if labels.len() != into.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for {} images",
                labels.len(),
                into.len()
            )));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        Ok(Self { labels, into })
    }

    /// Every element is its own basis label.
    pub fn identity(p: &FinPoset) -> Self {
        Self {
            labels: p.names().to_vec(),
            into: p.elements().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.into.len()
    }

    pub fn is_empty(&self) -> bool {
        self.into.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, b: usize) -> &str {
        &self.labels[b]
    }

    pub fn images(&self) -> &[usize] {
        &self.into
    }

    #[inline]
    pub fn value(&self, b: usize) -> usize {
        self.into[b]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    /// Images lie in the host, and the basis is inhabited when the host is.
    pub fn fits(&self, p: &FinPoset) -> Result<()> {
        if let Some(&v) = self.into.iter().find(|&&v| v >= p.len()) {
            return Err(Error::UnknownElement(format!("element index {v}")));
        }
        if self.into.is_empty() && !p.is_empty() {
            return Err(Error::NotABasis("empty basis for an inhabited poset".into()));
        }
        Ok(())
    }

    /// `↡_β x`, the labels whose image is way below `x`.
    pub fn way_below_family(&self, p: &FinPoset, x: usize) -> Family {
        self.family_where(|v| way_below(p, v, x))
    }

    /// `↓_β x`, the labels whose image is below `x`.
    pub fn below_family(&self, p: &FinPoset, x: usize) -> Family {
        self.family_where(|v| p.leq(v, x))
    }

    fn family_where<F: Fn(usize) -> bool>(&self, keep: F) -> Family {
        let (labels, values): (Vec<String>, Vec<usize>) = self
            .labels
            .iter()
            .zip(&self.into)
            .filter(|(_, &v)| keep(v))
            .map(|(l, &v)| (l.clone(), v))
            .unzip();
        Family::new(labels, values).expect("labels are unique")
    }

    /// Indices `b` with `β(b) ≪ x`, as a subset of the label set.
    pub fn way_below_indices(&self, p: &FinPoset, x: usize) -> Subset {
        Subset::from_indices(
            self.len(),
            (0..self.len()).filter(|&b| way_below(p, self.into[b], x)),
        )
    }

    /// `r ∘ β` for a map out of the host.
    pub fn push_forward(&self, r: &MonoMap) -> BasisMap {
        BasisMap {
            labels: self.labels.clone(),
            into: self.into.iter().map(|&v| r.apply(v)).collect(),
        }
    }

    pub fn restrict(&self, keep: &Subset) -> BasisMap {
        let (labels, into) = keep
            .iter()
            .map(|b| (self.labels[b].clone(), self.into[b]))
            .unzip();
        BasisMap { labels, into }
    }
}

/// Why a map fails to be a small basis at some element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisViolation {
    pub element: usize,
    pub reason: &'static str,
}

/// First element at which `↡_β x` is not directed with supremum `x`.
pub fn small_basis_violation(p: &FinPoset, beta: &BasisMap) -> Option<BasisViolation> {
    if beta.fits(p).is_err() {
        return Some(BasisViolation {
            element: 0,
            reason: "basis does not fit the host",
        });
    }
    p.elements().find_map(|x| {
        let fam = beta.way_below_family(p, x);
        family_violation(p, &fam, x).map(|reason| BasisViolation { element: x, reason })
    })
}

fn family_violation(p: &FinPoset, fam: &Family, x: usize) -> Option<&'static str> {
    if fam.is_empty() {
        Some("family is empty")
    } else if !fam.is_directed(p) {
        Some("family is not directed")
    } else if fam.sup(p) != Ok(x) {
        Some("family has the wrong supremum")
    } else {
        None
    }
}

pub fn check_small_basis(p: &FinPoset, beta: &BasisMap) -> bool {
    small_basis_violation(p, beta).is_none()
}

pub fn small_compact_basis_violation(p: &FinPoset, beta: &BasisMap) -> Option<BasisViolation> {
    if let Some(v) = small_basis_violation(p, beta) {
        return Some(v);
    }
    if let Some(&v) = beta.images().iter().find(|&&v| !is_compact(p, v)) {
        return Some(BasisViolation {
            element: v,
            reason: "basis element is not compact",
        });
    }
    p.elements().find_map(|x| {
        let fam = beta.below_family(p, x);
        family_violation(p, &fam, x).map(|reason| BasisViolation { element: x, reason })
    })
}

/// Small basis whose images are compact; the `β(b) ⊑ x` family is checked
/// directly as well.
pub fn check_small_compact_basis(p: &FinPoset, beta: &BasisMap) -> bool {
    small_compact_basis_violation(p, beta).is_none()
}

/// Every compact element lies in the image of a small compact basis.
pub fn basis_contains_all_compacts_check(p: &FinPoset, beta: &BasisMap) -> Result<bool> {
    if let Some(v) = small_compact_basis_violation(p, beta) {
        return Err(Error::NotABasis(format!(
            "at `{}`: {}",
            p.name(v.element),
            v.reason
        )));
    }
    let image = Subset::from_indices(p.len(), beta.images().iter().copied());
    Ok(compacts(p).is_subset_of(&image))
}

/// `∀b. β(b) ≪ x → β(b) ≪ y`.
pub fn leq_via_basis(p: &FinPoset, beta: &BasisMap, x: usize, y: usize) -> bool {
    beta.images()
        .iter()
        .all(|&v| !way_below(p, v, x) || way_below(p, v, y))
}

/// A basis label `b` with `x ≪ β(b) ≪ y`.
pub fn interpolate_unary(p: &FinPoset, beta: &BasisMap, x: usize, y: usize) -> Result<usize> {
    if !way_below(p, x, y) {
        return Err(Error::PreconditionViolated(format!(
            "`{}` is not way below `{}`",
            p.name(x),
            p.name(y)
        )));
    }
    (0..beta.len())
        .find(|&b| way_below(p, x, beta.value(b)) && way_below(p, beta.value(b), y))
        .ok_or(Error::NoInterpolant)
}

/// A basis label `b` with `x, y ≪ β(b) ≪ z`.
pub fn interpolate_binary(
    p: &FinPoset,
    beta: &BasisMap,
    x: usize,
    y: usize,
    z: usize,
) -> Result<usize> {
    if !way_below(p, x, z) || !way_below(p, y, z) {
        return Err(Error::PreconditionViolated(format!(
            "`{}` and `{}` are not both way below `{}`",
            p.name(x),
            p.name(y),
            p.name(z)
        )));
    }
    (0..beta.len())
        .find(|&b| {
            let v = beta.value(b);
            way_below(p, x, v) && way_below(p, y, v) && way_below(p, v, z)
        })
        .ok_or(Error::NoInterpolant)
}

/// Given a continuous retract `r ∘ s = id : D → E → D` and a small basis
/// `β` of `E`, returns `r ∘ β`, a small basis of `D`.
pub fn transfer_basis_along_retract(
    section: &MonoMap,
    retraction: &MonoMap,
    beta_e: &BasisMap,
) -> Result<BasisMap> {
    let rs = section.then(retraction)?;
    if !rs.is_identity() {
        return Err(Error::NotARetract("r ∘ s is not the identity".into()));
    }
    if !section.is_scott_continuous() || !retraction.is_scott_continuous() {
        return Err(Error::NotARetract(
            "section or retraction is not continuous".into(),
        ));
    }
    if let Some(v) = small_basis_violation(section.target(), beta_e) {
        return Err(Error::NotABasis(format!(
            "at `{}`: {}",
            section.target().name(v.element),
            v.reason
        )));
    }
    Ok(beta_e.push_forward(retraction))
}

/// `y ≪ s(x) ⇒ r(y) ≪ x` for all `x ∈ D`, `y ∈ E`.
pub fn retract_way_below_transfer_check(section: &MonoMap, retraction: &MonoMap) -> bool {
    let d = section.source();
    let e = section.target();
    d.elements().all(|x| {
        e.elements().all(|y| {
            !way_below(e, y, section.apply(x)) || way_below(d, retraction.apply(y), x)
        })
    })
}

/// Compares `f ⊑ g` decided on basis images only against the full pointwise
/// comparison; `true` when the two agree.
pub fn exponential_locally_small_certificate(
    beta_d: &BasisMap,
    f: &MonoMap,
    g: &MonoMap,
) -> bool {
    let e = f.target();
    let on_basis = beta_d
        .images()
        .iter()
        .all(|&b| e.leq(f.apply(b), g.apply(b)));
    on_basis == f.leq_pointwise(g)
}
