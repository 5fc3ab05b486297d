//! Finite posets, directed subsets and their suprema, monotone maps and
//! embedding-projection pairs.
//!
//! Elements are addressed by their index in the canonical (file) order; all
//! enumerations iterate in that order so outputs are deterministic. The order
//! is stored as a dense boolean matrix.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Largest carrier for which subsets are enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 16;

/// A finite partially ordered set with string identifiers.
#[derive(Clone, PartialEq, Eq)]
pub struct FinPoset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateElement(n.clone()));
        }
    }
    Ok(index)
}

impl FinPoset {
    /// Builds the poset whose order is the reflexive-transitive closure of
    /// the given cover pairs `(lower, upper)`.
    pub fn from_covers<S: AsRef<str>, T: AsRef<str>>(
        elements: &[S],
        covers: &[(T, T)],
    ) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_names(&names)?;
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let (lo, hi) = (lo.as_ref(), hi.as_ref());
            let a = *index
                .get(lo)
                .ok_or_else(|| Error::UnknownElement(lo.to_string()))?;
            let b = *index
                .get(hi)
                .ok_or_else(|| Error::UnknownElement(hi.to_string()))?;
            if a == b {
                return Err(Error::CycleDetected(lo.to_string()));
            }
            leq[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::CycleDetected(names[i].clone()));
                }
            }
        }
        Ok(Self { names, index, leq })
    }

    /// Builds a poset from an explicit order predicate, validating the
    /// partial-order laws.
    pub fn from_leq<F: Fn(usize, usize) -> bool>(names: Vec<String>, leq: F) -> Result<Self> {
        let index = index_names(&names)?;
        let n = names.len();
        let mut m = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = leq(i, j);
            }
        }
        let p = Self {
            names,
            index,
            leq: m,
        };
        p.check_laws()?;
        Ok(p)
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            if !self.leq(x, x) {
                return Err(Error::NotAPartialOrder(format!(
                    "`{}` is not below itself",
                    self.names[x]
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Err(Error::NotAPartialOrder(format!(
                        "`{}` and `{}` are mutually below",
                        self.names[x], self.names[y]
                    )));
                }
                if !self.leq(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.leq(y, z) && !self.leq(x, z) {
                        return Err(Error::NotAPartialOrder(format!(
                            "transitivity fails at `{}`, `{}`, `{}`",
                            self.names[x], self.names[y], self.names[z]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The chain `names[0] ⊑ names[1] ⊑ ...`.
    pub fn chain<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let covers: Vec<(&str, &str)> = names
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        Self::from_covers(names, &covers)
    }

    pub fn antichain<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::from_covers::<S, &str>(names, &[])
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

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// The subset named by the given identifiers.
    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<Subset> {
        let mut s = Subset::empty(self.len());
        for n in names {
            s.insert(self.index_of(n.as_ref())?);
        }
        Ok(s)
    }

    pub fn down_set(&self, x: usize) -> Subset {
        Subset::from_indices(self.len(), self.elements().filter(|&y| self.leq(y, x)))
    }

    pub fn up_set(&self, x: usize) -> Subset {
        Subset::from_indices(self.len(), self.elements().filter(|&y| self.leq(x, y)))
    }

    fn assert_host(&self, s: &Subset) {
        assert_eq!(
            s.universe(),
            self.len(),
            "subset universe does not match the host poset"
        );
    }

    /// Inhabited, and every pair of members has an upper bound among the members.
    pub fn is_directed(&self, s: &Subset) -> bool {
        self.assert_host(s);
        let members = s.to_vec();
        if members.is_empty() {
            return false;
        }
        members.iter().all(|&a| {
            members.iter().all(|&b| {
                members
                    .iter()
                    .any(|&c| self.leq(a, c) && self.leq(b, c))
            })
        })
    }

    /// The greatest member of `s`, if it has one.
    pub fn greatest(&self, s: &Subset) -> Option<usize> {
        self.assert_host(s);
        s.iter().find(|&m| s.iter().all(|x| self.leq(x, m)))
    }

    /// Supremum of a directed subset. A finite directed subset contains its
    /// supremum, so this is its greatest member.
    pub fn directed_sup(&self, s: &Subset) -> Result<usize> {
        if !self.is_directed(s) {
            return Err(Error::NotDirected);
        }
        self.greatest(s).ok_or(Error::NotDirected)
    }

    /// Least upper bound of an arbitrary subset, computed as the least element
    /// of the intersection of the members' up-sets.
    pub fn lub(&self, s: &Subset) -> Option<usize> {
        self.assert_host(s);
        let mut ub = Subset::full(self.len());
        for x in s.iter() {
            ub = ub.intersection(&self.up_set(x));
        }
        let least = ub.iter().find(|&u| ub.iter().all(|v| self.leq(u, v)));
        least
    }

    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        self.lub(&Subset::from_indices(self.len(), [x, y]))
    }

    pub fn bottom(&self) -> Option<usize> {
        self.elements()
            .find(|&b| self.elements().all(|x| self.leq(b, x)))
    }

    pub fn top(&self) -> Option<usize> {
        self.elements()
            .find(|&t| self.elements().all(|x| self.leq(x, t)))
    }

    pub fn is_pointed(&self) -> bool {
        self.bottom().is_some()
    }

    /// A finite poset is sup-complete exactly when it has a least element and
    /// all binary joins.
    pub fn is_lattice(&self) -> bool {
        self.is_pointed()
            && self
                .elements()
                .all(|x| self.elements().all(|y| self.join(x, y).is_some()))
    }

    /// Pairs `(x, y)` where `y` covers `x`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Every directed subset, found by filtering all subsets.
    pub fn directed_subsets(&self) -> Result<Vec<Subset>> {
        if self.len() > EXHAUSTIVE_LIMIT {
            return Err(Error::CarrierTooLarge {
                size: self.len(),
                limit: EXHAUSTIVE_LIMIT,
            });
        }
        Ok(Subset::all(self.len())
            .filter(|s| self.is_directed(s))
            .collect())
    }

    /// Elements ordered so every element comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by_key(|&x| self.elements().filter(|&y| self.lt(y, x)).count());
        order
    }

    /// The induced subposet on `s`, keeping canonical order.
    pub fn induced(&self, s: &Subset) -> FinPoset {
        let members = s.to_vec();
        let names = members.iter().map(|&i| self.names[i].clone()).collect();
        FinPoset::from_leq(names, |a, b| self.leq(members[a], members[b]))
            .expect("induced order of a poset is a poset")
    }

    /// Renders a subset as `{a,b,c}`.
    pub fn format_subset(&self, s: &Subset) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.names[a], self.names[b]))
            .collect();
        f.debug_struct("FinPoset")
            .field("elements", &self.names)
            .field("covers", &covers)
            .finish()
    }
}

fn same_poset(a: &Arc<FinPoset>, b: &Arc<FinPoset>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A total assignment between two finite posets.
///
/// [`MonoMap::new`] insists on monotonicity; [`MonoMap::raw`] only checks the
/// shape so that predicates such as [`MonoMap::is_monotone`] can be exercised
/// on arbitrary maps.
#[derive(Clone)]
pub struct MonoMap {
    source: Arc<FinPoset>,
    target: Arc<FinPoset>,
    graph: Vec<usize>,
}

impl MonoMap {
    pub fn raw(source: Arc<FinPoset>, target: Arc<FinPoset>, graph: Vec<usize>) -> Result<Self> {
        if graph.len() != source.len() {
            return Err(Error::ShapeMismatch(format!(
                "graph has {} entries for a source of {} elements",
                graph.len(),
                source.len()
            )));
        }
        if let Some(&y) = graph.iter().find(|&&y| y >= target.len()) {
            return Err(Error::ShapeMismatch(format!(
                "image index {y} outside a target of {} elements",
                target.len()
            )));
        }
        Ok(Self {
            source,
            target,
            graph,
        })
    }

    pub fn new(source: Arc<FinPoset>, target: Arc<FinPoset>, graph: Vec<usize>) -> Result<Self> {
        let f = Self::raw(source, target, graph)?;
        if let Some((x, y)) = f.monotonicity_violation() {
            return Err(Error::NotMonotone(format!(
                "{} ⊑ {} but images are unordered",
                f.source.name(x),
                f.source.name(y)
            )));
        }
        Ok(f)
    }

    pub fn identity(p: Arc<FinPoset>) -> Self {
        let graph = p.elements().collect();
        Self {
            source: p.clone(),
            target: p,
            graph,
        }
    }

    pub fn constant(source: Arc<FinPoset>, target: Arc<FinPoset>, y: usize) -> Result<Self> {
        let graph = vec![y; source.len()];
        Self::new(source, target, graph)
    }

    pub fn source(&self) -> &Arc<FinPoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinPoset> {
        &self.target
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.graph[x]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &MonoMap) -> Result<MonoMap> {
        if !same_poset(&self.target, &then.source) {
            return Err(Error::ShapeMismatch(
                "composite maps do not share a middle poset".into(),
            ));
        }
        Ok(MonoMap {
            source: self.source.clone(),
            target: then.target.clone(),
            graph: self.graph.iter().map(|&y| then.graph[y]).collect(),
        })
    }

    fn monotonicity_violation(&self) -> Option<(usize, usize)> {
        let s = &self.source;
        for x in s.elements() {
            for y in s.elements() {
                if s.leq(x, y) && !self.target.leq(self.graph[x], self.graph[y]) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_violation().is_none()
    }

    /// Monotone and preserving suprema of directed subsets. Directed subsets
    /// are enumerated when the source is small enough; beyond that a monotone
    /// map already preserves them because each contains its own supremum.
    pub fn is_scott_continuous(&self) -> bool {
        if !self.is_monotone() {
            return false;
        }
        let Ok(directed) = self.source.directed_subsets() else {
            return true;
        };
        directed.iter().all(|s| {
            let sup = self.source.directed_sup(s).expect("enumerated subsets are directed");
            let image = self.image_of(s);
            self.target.directed_sup(&image) == Ok(self.graph[sup])
        })
    }

    pub fn image_of(&self, s: &Subset) -> Subset {
        Subset::from_indices(self.target.len(), s.iter().map(|x| self.graph[x]))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = Subset::empty(self.target.len());
        for &y in &self.graph {
            if seen.contains(y) {
                return false;
            }
            seen.insert(y);
        }
        true
    }

    pub fn reflects_order(&self) -> bool {
        let s = &self.source;
        s.elements().all(|x| {
            s.elements()
                .all(|y| !self.target.leq(self.graph[x], self.graph[y]) || s.leq(x, y))
        })
    }

    /// Pointwise order of maps with the same shape.
    pub fn leq_pointwise(&self, other: &MonoMap) -> bool {
        self.graph
            .iter()
            .zip(&other.graph)
            .all(|(&a, &b)| self.target.leq(a, b))
    }

    pub fn is_identity(&self) -> bool {
        same_poset(&self.source, &self.target)
            && self.graph.iter().enumerate().all(|(i, &y)| i == y)
    }
}

impl fmt::Debug for MonoMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .graph
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}↦{}", self.source.name(x), self.target.name(y)))
            .collect();
        write!(f, "MonoMap[{}]", pairs.join(", "))
    }
}

impl PartialEq for MonoMap {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && same_poset(&self.source, &other.source)
            && same_poset(&self.target, &other.target)
    }
}

/// An embedding `D → E` with its projection `E → D`.
#[derive(Debug, Clone)]
pub struct EpPair {
    embed: MonoMap,
    project: MonoMap,
}

impl EpPair {
    pub fn new(embed: MonoMap, project: MonoMap) -> Result<Self> {
        if !same_poset(&embed.source, &project.target) || !same_poset(&embed.target, &project.source)
        {
            return Err(Error::ShapeMismatch(
                "embedding and projection do not run between the same posets".into(),
            ));
        }
        Ok(Self { embed, project })
    }

    pub fn embed(&self) -> &MonoMap {
        &self.embed
    }

    pub fn project(&self) -> &MonoMap {
        &self.project
    }

    pub fn small(&self) -> &Arc<FinPoset> {
        &self.embed.source
    }

    pub fn large(&self) -> &Arc<FinPoset> {
        &self.embed.target
    }

    pub fn identity(p: Arc<FinPoset>) -> Self {
        Self {
            embed: MonoMap::identity(p.clone()),
            project: MonoMap::identity(p),
        }
    }

    /// Section law, deflation law and continuity of both halves.
    pub fn is_valid(&self) -> bool {
        let d = &self.embed.source;
        let e = &self.embed.target;
        let section = d
            .elements()
            .all(|x| self.project.apply(self.embed.apply(x)) == x);
        let deflation = e
            .elements()
            .all(|y| e.leq(self.embed.apply(self.project.apply(y)), y));
        section
            && deflation
            && self.embed.is_scott_continuous()
            && self.project.is_scott_continuous()
    }

    /// Composite `self` followed by `next` (`D ⊲ E ⊲ F`).
    pub fn then(&self, next: &EpPair) -> Result<EpPair> {
        EpPair::new(
            self.embed.then(&next.embed)?,
            next.project.then(&self.project)?,
        )
    }
}

pub fn validate_ep_pair(p: &EpPair) -> bool {
    p.is_valid()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn diamond() -> FinPoset {
        FinPoset::from_covers(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap()
    }

    #[test]
    fn closure_singleton_and_chain() {
        let p = FinPoset::from_covers::<_, &str>(&["a"], &[]).unwrap();
        assert!(p.leq(0, 0));
        let c = FinPoset::from_covers(&["a", "b"], &[("a", "b")]).unwrap();
        assert!(c.leq(0, 1) && !c.leq(1, 0));
    }

    #[test]
    fn closure_rejects_cycles_and_duplicates() {
        let e = FinPoset::from_covers(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(e, Error::CycleDetected(_)));
        let e = FinPoset::from_covers::<_, &str>(&["a", "a"], &[]).unwrap_err();
        assert_eq!(e, Error::DuplicateElement("a".into()));
        let e = FinPoset::from_covers(&["a"], &[("a", "z")]).unwrap_err();
        assert_eq!(e, Error::UnknownElement("z".into()));
    }

    #[test]
    fn closure_is_transitive() {
        let p = FinPoset::chain(&["a", "b", "c", "d"]).unwrap();
        assert!(p.leq(0, 3));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn directedness_examples() {
        let d = diamond();
        assert!(!d.is_directed(&Subset::empty(4)));
        assert!(d.is_directed(&d.subset(&["bot", "a", "top"]).unwrap()));
        assert!(!d.is_directed(&d.subset(&["a", "b"]).unwrap()));
        assert!(d.is_directed(&d.subset(&["bot", "b"]).unwrap()));
        assert!(matches!(d.subset(&["nope"]), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn directed_sup_examples() {
        let d = diamond();
        assert_eq!(d.directed_sup(&d.subset(&["a"]).unwrap()), Ok(1));
        assert_eq!(d.directed_sup(&d.subset(&["bot", "a", "top"]).unwrap()), Ok(3));
        assert_eq!(
            d.directed_sup(&d.subset(&["a", "b"]).unwrap()),
            Err(Error::NotDirected)
        );
        assert_eq!(d.lub(&d.subset(&["a", "b"]).unwrap()), Some(3));
    }

    #[test]
    fn lattice_and_pointedness() {
        let d = diamond();
        assert!(d.is_lattice());
        let v = FinPoset::from_covers(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        assert!(v.is_pointed());
        assert!(!v.is_lattice());
        assert!(!FinPoset::antichain::<&str>(&[]).unwrap().is_pointed());
    }

    #[test]
    fn from_leq_validates() {
        let e = FinPoset::from_leq(vec!["a".into(), "b".into()], |_, _| true).unwrap_err();
        assert!(matches!(e, Error::NotAPartialOrder(_)));
        let e = FinPoset::from_leq(vec!["a".into()], |_, _| false).unwrap_err();
        assert!(matches!(e, Error::NotAPartialOrder(_)));
    }

    #[test]
    fn identity_and_constant_are_continuous() {
        let d = Arc::new(diamond());
        assert!(MonoMap::identity(d.clone()).is_scott_continuous());
        assert!(MonoMap::constant(d.clone(), d.clone(), 1).unwrap().is_scott_continuous());
        let swap = MonoMap::raw(d.clone(), d.clone(), vec![3, 1, 2, 0]).unwrap();
        assert!(!swap.is_scott_continuous());
        assert!(matches!(
            MonoMap::new(d.clone(), d, vec![3, 1, 2, 0]),
            Err(Error::NotMonotone(_))
        ));
    }

    #[test]
    fn ep_pair_examples() {
        let one = Arc::new(FinPoset::chain(&["bot"]).unwrap());
        let two = Arc::new(FinPoset::chain(&["bot", "top"]).unwrap());
        let e = MonoMap::new(one.clone(), two.clone(), vec![0]).unwrap();
        let p = MonoMap::new(two.clone(), one.clone(), vec![0, 0]).unwrap();
        assert!(validate_ep_pair(&EpPair::new(e, p).unwrap()));
        assert!(validate_ep_pair(&EpPair::identity(two.clone())));

        // A collapsing "embedding" breaks the section law.
        let collapse = MonoMap::new(two.clone(), one.clone(), vec![0, 0]).unwrap();
        let back = MonoMap::new(one.clone(), two.clone(), vec![0]).unwrap();
        assert!(!validate_ep_pair(&EpPair::new(collapse, back).unwrap()));

        let wrong = MonoMap::identity(two.clone());
        let e = MonoMap::new(one.clone(), two, vec![0]).unwrap();
        assert!(matches!(EpPair::new(e, wrong), Err(Error::ShapeMismatch(_))));
    }
}
