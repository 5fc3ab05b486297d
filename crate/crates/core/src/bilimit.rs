//! Finite towers of ep-pairs, the Scott function-space tower, finite
//! bilimits as compatible tuples, and bases on the bilimit.
//!
//! The tower starts at the two-point chain `D₀` and sets
//! `D_{k+1} = D_k → D_k`, with
//!
//! ```text
//! ε₀(x) = const x          π₀(f) = f(⊥)
//! ε_{k+1}(f) = ε_k ∘ f ∘ π_k   π_{k+1}(g) = π_k ∘ g ∘ ε_k
//! ```

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expo::{enumerate_monotone_graphs, step_basis, ExponentialPoset, DEFAULT_NODE_BUDGET};
use crate::finposet::{EpPair, FinPoset, MonoMap};
use crate::indcomp::Family;
use crate::waybelow::{
    approximates, check_small_basis, check_small_compact_basis, is_compact, small_basis_violation,
    way_below, BasisMap,
};

/// Highest stage built without an explicit budget.
pub const MAX_SAFE_STAGE: usize = 2;

/// Element cap for the stage beyond the safe range.
pub const UNSAFE_STAGE_ELEMENT_CAP: usize = 5_000;

/// A chain of posets `D₀ ⊲ D₁ ⊲ … ⊲ D_n` joined by ep-pairs.
#[derive(Debug, Clone)]
pub struct Tower {
    stages: Vec<Arc<FinPoset>>,
    pairs: Vec<EpPair>,
}

impl Tower {
    pub fn new(stages: Vec<Arc<FinPoset>>, pairs: Vec<EpPair>) -> Result<Self> {
        if stages.is_empty() || pairs.len() + 1 != stages.len() {
            return Err(Error::IncompatibleTower(format!(
                "{} stages with {} ep-pairs",
                stages.len(),
                pairs.len()
            )));
        }
        for (k, ep) in pairs.iter().enumerate() {
            if **ep.small() != *stages[k] || **ep.large() != *stages[k + 1] {
                return Err(Error::IncompatibleTower(format!(
                    "ep-pair {k} does not join stages {k} and {}",
                    k + 1
                )));
            }
        }
        Ok(Self { stages, pairs })
    }

    pub fn single(p: Arc<FinPoset>) -> Self {
        Self {
            stages: vec![p],
            pairs: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn stage(&self, k: usize) -> &Arc<FinPoset> {
        &self.stages[k]
    }

    pub fn stages(&self) -> &[Arc<FinPoset>] {
        &self.stages
    }

    pub fn pair(&self, k: usize) -> &EpPair {
        &self.pairs[k]
    }

    pub fn top(&self) -> usize {
        self.stages.len() - 1
    }

    /// `(ε_{i,j}, π_{i,j})` for `i ≤ j`, by composition.
    pub fn composite(&self, i: usize, j: usize) -> EpPair {
        assert!(i <= j && j < self.len(), "composite needs i <= j < stages");
        (i..j).fold(EpPair::identity(self.stages[i].clone()), |acc, k| {
            acc.then(&self.pairs[k]).expect("adjacent stages compose")
        })
    }

    pub fn embed(&self, i: usize, j: usize, x: usize) -> usize {
        (i..j).fold(x, |v, k| self.pairs[k].embed().apply(v))
    }

    pub fn project(&self, i: usize, j: usize, y: usize) -> usize {
        (i..j).rev().fold(y, |v, k| self.pairs[k].project().apply(v))
    }

    /// Every adjacent pair is a valid ep-pair.
    pub fn ep_laws_check(&self) -> bool {
        self.pairs.iter().all(|ep| ep.is_valid())
    }

    /// `π_{i,j} ∘ ε_{i,j} = id` and `ε_{i,j} ∘ π_{i,j} ⊑ id` for all `i ≤ j`.
    pub fn composite_laws_check(&self) -> bool {
        (0..self.len()).all(|i| (i..self.len()).all(|j| self.composite(i, j).is_valid()))
    }

    /// `ε_{j,k} ∘ ε_{i,j} = ε_{i,k}` and the matching projection identity.
    pub fn functoriality_check(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            (i..n).all(|j| {
                (j..n).all(|k| {
                    let ij = self.composite(i, j);
                    let jk = self.composite(j, k);
                    let ik = self.composite(i, k);
                    ij.embed().then(jk.embed()).is_ok_and(|m| m == *ik.embed())
                        && jk.project().then(ij.project()).is_ok_and(|m| m == *ik.project())
                })
            })
        })
    }

    /// `ε_{i,j}` preserves and reflects way-below, hence compactness.
    pub fn embeddings_preserve_way_below_check(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            (i..n).all(|j| {
                let (di, dj) = (&self.stages[i], &self.stages[j]);
                di.elements().all(|x| {
                    di.elements().all(|y| {
                        way_below(di, x, y)
                            == way_below(dj, self.embed(i, j, x), self.embed(i, j, y))
                    }) && is_compact(di, x) == is_compact(dj, self.embed(i, j, x))
                })
            })
        })
    }
}

/// The Scott tower together with the exponentials it was built from.
#[derive(Debug, Clone)]
pub struct ScottTower {
    pub tower: Tower,
    /// `exps[k]` presents stage `k + 1` as `D_k → D_k`.
    pub exps: Vec<ExponentialPoset>,
}

/// Stages `D₀ … D_n`; `n` is capped at [`MAX_SAFE_STAGE`].
pub fn scott_tower(n: usize) -> Result<ScottTower> {
    if n > MAX_SAFE_STAGE {
        return Err(Error::StageTooLarge(n));
    }
    scott_tower_with_budget(n, DEFAULT_NODE_BUDGET, usize::MAX)
}

/// As [`scott_tower`] without the stage cap, failing with `TooLarge` when a
/// stage exceeds the node budget or `max_elements`.
pub fn scott_tower_with_budget(
    n: usize,
    node_budget: u64,
    max_elements: usize,
) -> Result<ScottTower> {
    let d0 = Arc::new(FinPoset::chain(&["bot", "top"])?);
    let mut stages = vec![d0];
    let mut exps: Vec<ExponentialPoset> = Vec::new();
    let mut pairs: Vec<EpPair> = Vec::new();
    for k in 0..n {
        let dk = stages[k].clone();
        let exp = ExponentialPoset::with_budget(dk.clone(), dk.clone(), node_budget, max_elements)?;
        let next = exp.poset().clone();
        let (embed, project) = if k == 0 {
            let bot = dk.bottom().ok_or(Error::NotPointed)?;
            let embed: Vec<usize> = dk
                .elements()
                .map(|x| exp.index_of_graph(&vec![x; dk.len()]).expect("constants"))
                .collect();
            let project: Vec<usize> = (0..exp.len()).map(|f| exp.apply(f, bot)).collect();
            (embed, project)
        } else {
            let prev = &pairs[k - 1];
            let (e, p) = (prev.embed(), prev.project());
            let prev_exp = &exps[k - 1];
            let embed = (0..prev_exp.len())
                .map(|f| {
                    let g: Vec<usize> = dk
                        .elements()
                        .map(|x| e.apply(prev_exp.apply(f, p.apply(x))))
                        .collect();
                    exp.index_of_graph(&g).ok_or_else(|| {
                        Error::IncompatibleTower("embedded map is not monotone".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let project = (0..exp.len())
                .map(|g| {
                    let f: Vec<usize> = prev
                        .small()
                        .elements()
                        .map(|x| p.apply(exp.apply(g, e.apply(x))))
                        .collect();
                    prev_exp.index_of_graph(&f).ok_or_else(|| {
                        Error::IncompatibleTower("projected map is not monotone".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (embed, project)
        };
        let ep = EpPair::new(
            MonoMap::new(dk.clone(), next.clone(), embed)?,
            MonoMap::new(next.clone(), dk, project)?,
        )?;
        pairs.push(ep);
        stages.push(next);
        exps.push(exp);
    }
    Ok(ScottTower {
        tower: Tower::new(stages, pairs)?,
        exps,
    })
}

/// Compatible tuples `(σ₀, …, σ_n)` with `σ_i = π_{i,j}(σ_j)`, ordered
/// componentwise, and the isomorphism onto the top stage.
#[derive(Debug, Clone)]
pub struct BilimitPoset {
    pub tuples: Vec<Vec<usize>>,
    pub poset: Arc<FinPoset>,
    /// `σ ↦ σ_n`.
    pub to_top: MonoMap,
    index: HashMap<Vec<usize>, usize>,
}

impl BilimitPoset {
    pub fn index_of_tuple(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// `ε_{i,∞}(x)`: component `k` is `π_{k,i}(x)` below `i` and
    /// `ε_{i,k}(x)` above it.
    pub fn embed_from(&self, t: &Tower, i: usize, x: usize) -> usize {
        let tuple: Vec<usize> = (0..t.len())
            .map(|k| {
                if k <= i {
                    t.project(k, i, x)
                } else {
                    t.embed(i, k, x)
                }
            })
            .collect();
        self.index_of_tuple(&tuple)
            .expect("embedded points are compatible")
    }

    /// `π_{i,∞}(σ) = σ_i`.
    pub fn project_to(&self, i: usize, sigma: usize) -> usize {
        self.tuples[sigma][i]
    }
}

fn tuple_name(t: &Tower, tuple: &[usize]) -> String {
    let parts: Vec<&str> = tuple
        .iter()
        .enumerate()
        .map(|(k, &v)| t.stage(k).name(v))
        .collect();
    format!("({})", parts.join(";"))
}

/// The bilimit of a finite tower; every compatible tuple is determined by
/// its top component, so tuples are generated from the top and re-checked.
pub fn finite_bilimit(t: &Tower) -> Result<BilimitPoset> {
    let top = t.top();
    let tuples: Vec<Vec<usize>> = t
        .stage(top)
        .elements()
        .map(|s| (0..t.len()).map(|i| t.project(i, top, s)).collect())
        .collect();
    for tuple in &tuples {
        for i in 0..t.len() {
            for j in i..t.len() {
                if tuple[i] != t.project(i, j, tuple[j]) {
                    return Err(Error::IncompatibleTower(format!(
                        "tuple {} is not compatible at ({i}, {j})",
                        tuple_name(t, tuple)
                    )));
                }
            }
        }
    }
    let names = tuples.iter().map(|tp| tuple_name(t, tp)).collect();
    let poset = Arc::new(FinPoset::from_leq(names, |a, b| {
        (0..t.len()).all(|k| t.stage(k).leq(tuples[a][k], tuples[b][k]))
    })?);
    let to_top = MonoMap::new(
        poset.clone(),
        t.stage(top).clone(),
        tuples.iter().map(|tp| tp[top]).collect(),
    )?;
    if !(to_top.is_injective() && to_top.reflects_order() && tuples.len() == t.stage(top).len()) {
        return Err(Error::IncompatibleTower(
            "bilimit is not isomorphic to the top stage".into(),
        ));
    }
    let index = tuples
        .iter()
        .enumerate()
        .map(|(i, tp)| (tp.clone(), i))
        .collect();
    Ok(BilimitPoset {
        tuples,
        poset,
        to_top,
        index,
    })
}

/// Compatible tuples by filtering the full product; an independent oracle
/// for [`finite_bilimit`].
pub fn compatible_tuples_by_product(t: &Tower) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for k in 0..t.len() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                t.stage(k).elements().filter_map(move |v| {
                    let ok = prefix
                        .iter()
                        .enumerate()
                        .all(|(i, &u)| u == t.project(i, k, v));
                    ok.then(|| {
                        let mut next = prefix.clone();
                        next.push(v);
                        next
                    })
                })
            })
            .collect();
    }
    out
}

/// `α_∞(i, j) = ε_{i,∞}(α_i(j))`, given families with each `α_i`
/// approximating `σ_i`.
pub fn alpha_infinity(
    t: &Tower,
    bl: &BilimitPoset,
    sigma: usize,
    families: &[Family],
) -> Result<Family> {
    if families.len() != t.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} families for {} stages",
            families.len(),
            t.len()
        )));
    }
    for (i, fam) in families.iter().enumerate() {
        let target = bl.project_to(i, sigma);
        if !approximates(t.stage(i), fam, target).unwrap_or(false) {
            return Err(Error::NotApproximating(format!(
                "family {i} does not approximate `{}`",
                t.stage(i).name(target)
            )));
        }
    }
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for (i, fam) in families.iter().enumerate() {
        for (l, &v) in fam.labels().iter().zip(fam.values()) {
            labels.push(format!("{i}:{l}"));
            values.push(bl.embed_from(t, i, v));
        }
    }
    let out = Family::new(labels, values)?;
    if !approximates(&bl.poset, &out, sigma).unwrap_or(false) {
        return Err(Error::NotApproximating(format!(
            "combined family does not approximate `{}`",
            bl.poset.name(sigma)
        )));
    }
    Ok(out)
}

/// `β_∞(i, b) = ε_{i,∞}(β_i(b))`, labelled `i:b`.
pub fn bilimit_basis(t: &Tower, bl: &BilimitPoset, bases: &[BasisMap]) -> Result<BasisMap> {
    if bases.len() != t.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} bases for {} stages",
            bases.len(),
            t.len()
        )));
    }
    for (i, beta) in bases.iter().enumerate() {
        if let Some(v) = small_basis_violation(t.stage(i), beta) {
            return Err(Error::NotABasis(format!(
                "stage {i} at `{}`: {}",
                t.stage(i).name(v.element),
                v.reason
            )));
        }
    }
    let mut labels = Vec::new();
    let mut into = Vec::new();
    for (i, beta) in bases.iter().enumerate() {
        for b in 0..beta.len() {
            labels.push(format!("{i}:{}", beta.label(b)));
            into.push(bl.embed_from(t, i, beta.value(b)));
        }
    }
    let out = BasisMap::new(labels, into)?;
    if let Some(v) = small_basis_violation(&bl.poset, &out) {
        return Err(Error::NotABasis(format!(
            "bilimit at `{}`: {}",
            bl.poset.name(v.element),
            v.reason
        )));
    }
    Ok(out)
}

/// Outcome of the full construction on the Scott tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub stage_sizes: Vec<usize>,
    pub basis_sizes: Vec<usize>,
    pub bilimit_size: usize,
    pub bilimit_basis_size: usize,
    pub laws: Vec<(String, bool)>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.laws.iter().all(|(_, ok)| *ok)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stage_sizes: {:?}", self.stage_sizes)?;
        writeln!(f, "basis_sizes: {:?}", self.basis_sizes)?;
        writeln!(f, "bilimit_size: {}", self.bilimit_size)?;
        writeln!(f, "bilimit_basis_size: {}", self.bilimit_basis_size)?;
        let laws: Vec<String> = self
            .laws
            .iter()
            .map(|(name, ok)| format!("{name}={}", if *ok { "pass" } else { "fail" }))
            .collect();
        writeln!(f, "laws: {}", laws.join(" "))?;
        writeln!(f, "result: {}", if self.all_pass() { "pass" } else { "fail" })
    }
}

/// Stage bases: the identity on `D₀`, then step bases built from the
/// previous stage's basis.
pub fn stage_bases(st: &ScottTower) -> Result<Vec<BasisMap>> {
    let t = &st.tower;
    let mut bases = vec![BasisMap::identity(t.stage(0))];
    for k in 0..t.top() {
        let prev = &bases[k];
        let sb = step_basis(t.stage(k), prev, t.stage(k), prev)?;
        bases.push(sb.basis);
    }
    Ok(bases)
}

/// Builds `D₀ … D_n`, step bases per stage and the bilimit basis, and
/// records every law check.
pub fn tower_report(st: &ScottTower) -> Result<Report> {
    let t = &st.tower;
    let bases = stage_bases(st)?;
    let bl = finite_bilimit(t)?;
    let beta = bilimit_basis(t, &bl, &bases)?;

    let mut laws = Vec::new();
    for k in 0..t.top() {
        laws.push((format!("ep_{k}"), t.pair(k).is_valid()));
    }
    laws.push(("composites".into(), t.composite_laws_check()));
    laws.push(("functoriality".into(), t.functoriality_check()));
    laws.push((
        "way_below_preserved".into(),
        t.embeddings_preserve_way_below_check(),
    ));
    laws.push((
        "stage_compact_bases".into(),
        bases
            .iter()
            .enumerate()
            .all(|(k, b)| check_small_compact_basis(t.stage(k), b)),
    ));
    let mut product = compatible_tuples_by_product(t);
    product.sort();
    let mut generated = bl.tuples.clone();
    generated.sort();
    laws.push((
        "bilimit_iso".into(),
        product == generated && bl.to_top.is_injective() && bl.to_top.reflects_order(),
    ));
    laws.push(("bilimit_basis".into(), check_small_basis(&bl.poset, &beta)));
    laws.push((
        "bilimit_compact_basis".into(),
        check_small_compact_basis(&bl.poset, &beta),
    ));
    Ok(Report {
        stage_sizes: t.stages().iter().map(|s| s.len()).collect(),
        basis_sizes: bases.iter().map(|b| b.len()).collect(),
        bilimit_size: bl.len(),
        bilimit_basis_size: beta.len(),
        laws,
    })
}

/// `|D_{n+1}|`, the number of monotone self-maps of the top stage of
/// `scott_tower(n)`, counted without building the order on them.
pub fn next_stage_size(n: usize) -> Result<usize> {
    let st = scott_tower(n)?;
    let top = st.tower.stage(st.tower.top());
    Ok(enumerate_monotone_graphs(top, top, DEFAULT_NODE_BUDGET, usize::MAX)?.len())
}

/// The report for `scott_tower(2)`.
pub fn dinfty_demo() -> Result<Report> {
    tower_report(&scott_tower(MAX_SAFE_STAGE)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_three_count() {
        assert_eq!(next_stage_size(1).unwrap(), 10);
        // Independent count by a separate DFS over the ten-element D2.
        assert_eq!(next_stage_size(2).unwrap(), 120_549);
    }

    #[test]
    fn tower_sizes() {
        let st = scott_tower(2).unwrap();
        let sizes: Vec<usize> = st.tower.stages().iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![2, 3, 10]);
        assert!(st.tower.ep_laws_check());
        assert_eq!(scott_tower(3).unwrap_err(), Error::StageTooLarge(3));
    }

    #[test]
    fn first_pair_is_constants_and_evaluation_at_bottom() {
        let st = scott_tower(1).unwrap();
        let ep = st.tower.pair(0);
        let d1 = st.tower.stage(1);
        assert_eq!(d1.name(ep.embed().apply(0)), "[bot,bot]");
        assert_eq!(d1.name(ep.embed().apply(1)), "[top,top]");
        assert_eq!(ep.project().graph(), &[0, 0, 1]);
    }

    #[test]
    fn single_stage_bilimit() {
        let p = Arc::new(FinPoset::chain(&["a", "b", "c"]).unwrap());
        let t = Tower::single(p.clone());
        let bl = finite_bilimit(&t).unwrap();
        assert_eq!(bl.len(), 3);
        let beta = bilimit_basis(&t, &bl, &[BasisMap::identity(&p)]).unwrap();
        assert_eq!(beta.images(), &[0, 1, 2]);
    }

    #[test]
    fn bilimit_matches_product_filter() {
        let st = scott_tower(2).unwrap();
        let bl = finite_bilimit(&st.tower).unwrap();
        let mut product = compatible_tuples_by_product(&st.tower);
        product.sort();
        let mut generated = bl.tuples.clone();
        generated.sort();
        assert_eq!(product, generated);
        assert_eq!(bl.len(), 10);
    }

    #[test]
    fn alpha_infinity_with_down_set_families() {
        let st = scott_tower(1).unwrap();
        let t = &st.tower;
        let bl = finite_bilimit(t).unwrap();
        for sigma in bl.poset.elements() {
            let fams: Vec<Family> = (0..t.len())
                .map(|i| Family::from_subset(&t.stage(i).down_set(bl.project_to(i, sigma))))
                .collect();
            let a = alpha_infinity(t, &bl, sigma, &fams).unwrap();
            assert!(a.values().iter().all(|&v| is_compact(&bl.poset, v)));
        }
        let bad = vec![Family::constant(0), Family::constant(0)];
        let top = bl.to_top.graph().iter().position(|&v| v == 2).unwrap();
        assert!(matches!(
            alpha_infinity(t, &bl, top, &bad),
            Err(Error::NotApproximating(_))
        ));
    }

    #[test]
    fn dinfty_report() {
        let r = dinfty_demo().unwrap();
        assert_eq!(r.stage_sizes, vec![2, 3, 10]);
        assert!(r.all_pass(), "{r}");
        let text = r.to_string();
        assert!(text.starts_with("stage_sizes: [2, 3, 10]\n"));
    }
}
