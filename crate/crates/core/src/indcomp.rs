//! Families into a finite poset, the exceeds preorder, suprema in the
//! ind-completion, left adjuncts and the poset reflection of a finite
//! fragment.
//!
//! On a finite host every family is exceeds-equivalent to its image subset,
//! so quantifiers over "all directed families" range over directed subsets.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::finposet::FinPoset;
use crate::subset::Subset;

/// A labelled family `α : I → P`. Directedness is checked where it matters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    labels: Vec<String>,
    values: Vec<usize>,
}

impl Family {
    pub fn new(labels: Vec<String>, values: Vec<usize>) -> Result<Self> {
        if labels.len() != values.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for {} values",
                labels.len(),
                values.len()
            )));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        Ok(Self { labels, values })
    }

    /// Family indexed by `0..values.len()`.
    pub fn from_values(values: Vec<usize>) -> Self {
        let labels = (0..values.len()).map(|i| i.to_string()).collect();
        Self { labels, values }
    }

    /// The family of members of a subset, labelled by their indices.
    pub fn from_subset(s: &Subset) -> Self {
        Self::from_values(s.to_vec())
    }

    pub fn constant(x: usize) -> Self {
        Self::from_values(vec![x])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn image(&self, host: &FinPoset) -> Subset {
        Subset::from_indices(host.len(), self.values.iter().copied())
    }

    /// A family is directed exactly when its image subset is.
    pub fn is_directed(&self, host: &FinPoset) -> bool {
        host.is_directed(&self.image(host))
    }

    pub fn sup(&self, host: &FinPoset) -> Result<usize> {
        host.directed_sup(&self.image(host))
    }

    /// Concatenation `[α, β] : I + J → P`.
    pub fn concat(&self, other: &Family) -> Family {
        let labels = self
            .labels
            .iter()
            .map(|l| format!("inl:{l}"))
            .chain(other.labels.iter().map(|l| format!("inr:{l}")))
            .collect();
        let values = self.values.iter().chain(&other.values).copied().collect();
        Family { labels, values }
    }
}

fn require_directed(host: &FinPoset, fams: &[&Family]) -> Result<()> {
    if fams.iter().all(|f| f.is_directed(host)) {
        Ok(())
    } else {
        Err(Error::NotDirected)
    }
}

/// `β` exceeds `α`: every `α_i` lies below some `β_j`.
pub fn exceeds(host: &FinPoset, alpha: &Family, beta: &Family) -> Result<bool> {
    require_directed(host, &[alpha, beta])?;
    Ok(exceeds_unchecked(host, alpha, beta))
}

fn exceeds_unchecked(host: &FinPoset, alpha: &Family, beta: &Family) -> bool {
    alpha
        .values
        .iter()
        .all(|&a| beta.values.iter().any(|&b| host.leq(a, b)))
}

/// Supremum of a family of directed families, directed in the exceeds
/// preorder: the family indexed by the dependent sum of the inner indices.
pub fn ind_sup(host: &FinPoset, fams: &[Family]) -> Result<Family> {
    let refs: Vec<&Family> = fams.iter().collect();
    require_directed(host, &refs)?;
    if fams.is_empty() {
        return Err(Error::NotDirected);
    }
    for a in fams {
        for b in fams {
            let bounded = fams
                .iter()
                .any(|c| exceeds_unchecked(host, a, c) && exceeds_unchecked(host, b, c));
            if !bounded {
                return Err(Error::NotDirected);
            }
        }
    }
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for (i, f) in fams.iter().enumerate() {
        for (l, &v) in f.labels.iter().zip(&f.values) {
            labels.push(format!("{i}:{l}"));
            values.push(v);
        }
    }
    Family::new(labels, values)
}

/// `exceeds(α, β) ⇒ ⊔α ⊑ ⊔β`.
pub fn sup_map_monotone_check(host: &FinPoset, alpha: &Family, beta: &Family) -> Result<bool> {
    if !exceeds(host, alpha, beta)? {
        return Ok(true);
    }
    Ok(host.leq(alpha.sup(host)?, beta.sup(host)?))
}

/// `α` is left adjunct to `x`: for every directed `β`, `β` exceeds `α` iff
/// `x ⊑ ⊔β`. `β` ranges over all directed subsets of the host.
pub fn is_left_adjunct(host: &FinPoset, alpha: &Family, x: usize) -> Result<bool> {
    require_directed(host, &[alpha])?;
    let directed = host.directed_subsets()?;
    Ok(directed.iter().all(|s| {
        let beta = Family::from_subset(s);
        let sup = host.directed_sup(s).expect("enumerated subsets are directed");
        exceeds_unchecked(host, alpha, &beta) == host.leq(x, sup)
    }))
}

/// A finite fragment of `Ind(P)` quotiented by mutual exceeds.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub poset: FinPoset,
    /// Class of each input family.
    pub class_of: Vec<usize>,
    /// Representative family (least sorted image) of each class.
    pub representatives: Vec<Family>,
}

pub fn poset_reflection(host: &FinPoset, fams: &[Family]) -> Result<Reflection> {
    let refs: Vec<&Family> = fams.iter().collect();
    require_directed(host, &refs)?;
    let mut class_of = vec![usize::MAX; fams.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..fams.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        for j in i..fams.len() {
            if class_of[j] == usize::MAX
                && exceeds_unchecked(host, &fams[i], &fams[j])
                && exceeds_unchecked(host, &fams[j], &fams[i])
            {
                class_of[j] = c;
                members.push(j);
            }
        }
        classes.push(members);
    }
    let representatives: Vec<Family> = classes
        .iter()
        .map(|members| {
            members
                .iter()
                .map(|&j| &fams[j])
                .min_by_key(|f| f.image(host).to_vec())
                .expect("classes are inhabited")
                .clone()
        })
        .collect();
    let names = representatives
        .iter()
        .map(|f| host.format_subset(&f.image(host)))
        .collect();
    let poset = FinPoset::from_leq(names, |a, b| {
        exceeds_unchecked(host, &representatives[a], &representatives[b])
    })?;
    Ok(Reflection {
        poset,
        class_of,
        representatives,
    })
}

/// Every directed subset of the host, as a family.
pub fn all_directed_families(host: &FinPoset) -> Result<Vec<Family>> {
    Ok(host
        .directed_subsets()?
        .iter()
        .map(Family::from_subset)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> FinPoset {
        FinPoset::chain(&["bot", "top"]).unwrap()
    }

    #[test]
    fn exceeds_examples() {
        let p = two();
        let lo = Family::constant(0);
        let hi = Family::constant(1);
        assert!(exceeds(&p, &lo, &lo).unwrap());
        assert!(exceeds(&p, &lo, &hi).unwrap());
        assert!(!exceeds(&p, &hi, &lo).unwrap());
        let bad = Family::from_values(vec![]);
        assert_eq!(exceeds(&p, &bad, &lo), Err(Error::NotDirected));
    }

    #[test]
    fn ind_sup_single_and_pair() {
        let p = two();
        let a = Family::from_values(vec![0]);
        let s = ind_sup(&p, std::slice::from_ref(&a)).unwrap();
        assert_eq!(s.values(), a.values());
        let b = Family::from_values(vec![0, 1]);
        let u = ind_sup(&p, &[a.clone(), b.clone()]).unwrap();
        assert!(u.is_directed(&p));
        assert!(exceeds(&p, &a, &u).unwrap() && exceeds(&p, &b, &u).unwrap());
        assert_eq!(u.len(), 3);
    }

    #[test]
    fn ind_sup_rejects_undirected_outer_family() {
        let d = FinPoset::from_covers(&["a", "b"], &[] as &[(&str, &str)]).unwrap();
        let r = ind_sup(&d, &[Family::constant(0), Family::constant(1)]);
        assert_eq!(r, Err(Error::NotDirected));
    }

    #[test]
    fn sup_map_is_monotone_on_chain() {
        let p = two();
        assert!(sup_map_monotone_check(&p, &Family::constant(0), &Family::constant(1)).unwrap());
        assert!(sup_map_monotone_check(&p, &Family::constant(1), &Family::constant(1)).unwrap());
    }

    #[test]
    fn left_adjunct_examples() {
        let p = two();
        assert!(is_left_adjunct(&p, &Family::constant(1), 1).unwrap());
        assert!(!is_left_adjunct(&p, &Family::constant(0), 1).unwrap());
        assert!(is_left_adjunct(&p, &Family::from_values(vec![0, 1]), 1).unwrap());
    }

    #[test]
    fn reflection_merges_doubled_family() {
        let p = two();
        let a = Family::from_values(vec![0, 1]);
        let aa = a.concat(&a);
        let r = poset_reflection(&p, &[a, aa]).unwrap();
        assert_eq!(r.poset.len(), 1);
        assert_eq!(r.class_of, vec![0, 0]);
    }

    #[test]
    fn reflection_of_all_directed_families_of_chain() {
        let p = two();
        let fams = all_directed_families(&p).unwrap();
        let r = poset_reflection(&p, &fams).unwrap();
        assert_eq!(r.poset.len(), 2);
        assert_eq!(r.poset.names(), &["{bot}".to_string(), "{bot,top}".to_string()]);
        assert!(r.poset.leq(0, 1));
    }

    #[test]
    fn reflection_singleton() {
        let p = two();
        let r = poset_reflection(&p, &[Family::constant(1)]).unwrap();
        assert_eq!(r.poset.len(), 1);
    }
}
