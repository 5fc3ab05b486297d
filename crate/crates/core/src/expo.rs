//! Exponentials of finite posets, single step functions, step-function
//! bases, join-closed bases, and the basis of an exponential obtained
//! through ideal completions.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finposet::{FinPoset, MonoMap};
use crate::idealcomp::{algebraic_presentation, basis_from_order, directify, idl_poset, Directification};
use crate::indcomp::Family;
use crate::subset::Subset;
use crate::waybelow::{
    check_small_compact_basis, is_compact, small_basis_violation, transfer_basis_along_retract,
    BasisMap,
};

/// Search nodes allowed while enumerating monotone maps.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// All monotone maps `D → E`, in lexicographic order of their graphs.
pub fn enumerate_monotone_maps(d: &Arc<FinPoset>, e: &Arc<FinPoset>) -> Result<Vec<MonoMap>> {
    enumerate_monotone_graphs(d, e, DEFAULT_NODE_BUDGET, usize::MAX).map(|graphs| {
        graphs
            .into_iter()
            .map(|g| MonoMap::raw(d.clone(), e.clone(), g).expect("graphs fit"))
            .collect()
    })
}

/// Backtracking along a linear extension of `D`: each element's value must
/// lie above the values already chosen for the elements below it.
pub fn enumerate_monotone_graphs(
    d: &FinPoset,
    e: &FinPoset,
    node_budget: u64,
    max_maps: usize,
) -> Result<Vec<Vec<usize>>> {
    let order = d.linear_extension();
    let below: Vec<Vec<usize>> = order
        .iter()
        .map(|&x| d.elements().filter(|&p| p != x && d.leq(p, x)).collect())
        .collect();
    let mut graph = vec![usize::MAX; d.len()];
    let mut out = Vec::new();
    let mut nodes = 0u64;

    struct Search<'a> {
        d_order: &'a [usize],
        below: &'a [Vec<usize>],
        e: &'a FinPoset,
        budget: u64,
        max_maps: usize,
    }

    fn go(
        s: &Search,
        k: usize,
        graph: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > s.budget {
            return Err(Error::TooLarge(format!(
                "monotone map search exceeded {} nodes",
                s.budget
            )));
        }
        if k == s.d_order.len() {
            if out.len() >= s.max_maps {
                return Err(Error::TooLarge(format!(
                    "more than {} monotone maps",
                    s.max_maps
                )));
            }
            out.push(graph.clone());
            return Ok(());
        }
        let x = s.d_order[k];
        for y in s.e.elements() {
            if s.below[k].iter().all(|&p| s.e.leq(graph[p], y)) {
                graph[x] = y;
                go(s, k + 1, graph, out, nodes)?;
            }
        }
        graph[x] = usize::MAX;
        Ok(())
    }

    let search = Search {
        d_order: &order,
        below: &below,
        e,
        budget: node_budget,
        max_maps,
    };
    go(&search, 0, &mut graph, &mut out, &mut nodes)?;
    out.sort();
    Ok(out)
}

/// The monotone maps `D → E` under the pointwise order. Elements are named
/// by their graphs, e.g. `[bot,top]`.
#[derive(Debug, Clone)]
pub struct ExponentialPoset {
    source: Arc<FinPoset>,
    target: Arc<FinPoset>,
    graphs: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    poset: Arc<FinPoset>,
}

impl ExponentialPoset {
    pub fn new(d: Arc<FinPoset>, e: Arc<FinPoset>) -> Result<Self> {
        Self::with_budget(d, e, DEFAULT_NODE_BUDGET, usize::MAX)
    }

    pub fn with_budget(
        d: Arc<FinPoset>,
        e: Arc<FinPoset>,
        node_budget: u64,
        max_maps: usize,
    ) -> Result<Self> {
        let graphs = enumerate_monotone_graphs(&d, &e, node_budget, max_maps)?;
        let names = graphs
            .iter()
            .map(|g| {
                let parts: Vec<&str> = g.iter().map(|&y| e.name(y)).collect();
                format!("[{}]", parts.join(","))
            })
            .collect();
        let poset = FinPoset::from_leq(names, |i, j| {
            graphs[i].iter().zip(&graphs[j]).all(|(&a, &b)| e.leq(a, b))
        })?;
        let index = graphs
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        Ok(Self {
            source: d,
            target: e,
            graphs,
            index,
            poset: Arc::new(poset),
        })
    }

    pub fn source(&self) -> &Arc<FinPoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinPoset> {
        &self.target
    }

    pub fn poset(&self) -> &Arc<FinPoset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graph(&self, f: usize) -> &[usize] {
        &self.graphs[f]
    }

    pub fn map(&self, f: usize) -> MonoMap {
        MonoMap::raw(self.source.clone(), self.target.clone(), self.graphs[f].clone())
            .expect("graphs fit")
    }

    pub fn index_of_graph(&self, g: &[usize]) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn index_of_map(&self, f: &MonoMap) -> Option<usize> {
        self.index_of_graph(f.graph())
    }

    /// `f(x)` for the element `f` of the exponential.
    pub fn apply(&self, f: usize, x: usize) -> usize {
        self.graphs[f][x]
    }
}

/// `⇑d e`: `x ↦ e` when `d ⊑ x`, otherwise `⊥`.
pub fn step_function(
    d_poset: &Arc<FinPoset>,
    e_poset: &Arc<FinPoset>,
    d: usize,
    e: usize,
) -> Result<MonoMap> {
    let bot = e_poset.bottom().ok_or(Error::NotPointed)?;
    let graph = d_poset
        .elements()
        .map(|x| if d_poset.leq(d, x) { e } else { bot })
        .collect();
    MonoMap::new(d_poset.clone(), e_poset.clone(), graph)
}

/// `⇑d e` is compact in the exponential.
pub fn step_function_compact_check(exp: &ExponentialPoset, d: usize, e: usize) -> Result<bool> {
    let step = step_function(exp.source(), exp.target(), d, e)?;
    let idx = exp
        .index_of_map(&step)
        .expect("step functions are monotone");
    Ok(is_compact(exp.poset(), idx))
}

fn require_lattice(p: &FinPoset) -> Result<()> {
    if p.is_lattice() {
        Ok(())
    } else {
        Err(Error::NotALattice(format!(
            "poset {:?} lacks a least element or a binary join",
            p.names()
        )))
    }
}

fn require_compact_basis(p: &FinPoset, beta: &BasisMap) -> Result<()> {
    if check_small_compact_basis(p, beta) {
        Ok(())
    } else {
        Err(Error::NotABasis("not a small compact basis".into()))
    }
}

/// The directified step functions `⇑β_D(b) β_E(c)` as a basis of `E^D`.
#[derive(Debug, Clone)]
pub struct StepBasis {
    pub exp: ExponentialPoset,
    /// Basis label pairs `(b, c)` in canonical order.
    pub pairs: Vec<(usize, usize)>,
    pub directification: Directification,
    pub basis: BasisMap,
}

pub fn step_basis(
    d: &Arc<FinPoset>,
    beta_d: &BasisMap,
    e: &Arc<FinPoset>,
    beta_e: &BasisMap,
) -> Result<StepBasis> {
    require_lattice(e)?;
    require_compact_basis(d, beta_d)?;
    require_compact_basis(e, beta_e)?;
    let exp = ExponentialPoset::new(d.clone(), e.clone())?;
    step_basis_in(exp, beta_d, beta_e)
}

fn step_basis_in(exp: ExponentialPoset, beta_d: &BasisMap, beta_e: &BasisMap) -> Result<StepBasis> {
    let mut pairs = Vec::new();
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for b in 0..beta_d.len() {
        for c in 0..beta_e.len() {
            let step = step_function(exp.source(), exp.target(), beta_d.value(b), beta_e.value(c))?;
            pairs.push((b, c));
            labels.push(format!("({},{})", beta_d.label(b), beta_e.label(c)));
            values.push(exp.index_of_map(&step).expect("step functions are monotone"));
        }
    }
    let sigma = Family::new(labels, values)?;
    let directification = directify(exp.poset(), &sigma)?;
    let basis = directification.basis();
    Ok(StepBasis {
        exp,
        pairs,
        directification,
        basis,
    })
}

/// `f` is the pointwise join of the basis step functions below it.
pub fn sup_of_step_functions_check(
    exp: &ExponentialPoset,
    beta_d: &BasisMap,
    beta_e: &BasisMap,
    f: usize,
) -> Result<bool> {
    let e = exp.target();
    let bot = e.bottom().ok_or(Error::NotPointed)?;
    let mut join = vec![bot; exp.source().len()];
    for b in 0..beta_d.len() {
        for c in 0..beta_e.len() {
            let step = step_function(exp.source(), e, beta_d.value(b), beta_e.value(c))?;
            let below = step
                .graph()
                .iter()
                .zip(exp.graph(f))
                .all(|(&s, &v)| e.leq(s, v));
            if below {
                for (acc, &s) in join.iter_mut().zip(step.graph()) {
                    *acc = e
                        .join(*acc, s)
                        .ok_or_else(|| Error::NotALattice("missing binary join".into()))?;
                }
            }
        }
    }
    Ok(join == exp.graph(f))
}

/// A basis closed under finite joins: a designated bottom label and
/// `β(b ∨ c) = β(b) ∨ β(c)`.
#[derive(Debug, Clone)]
pub struct JoinClosedBasis {
    pub basis: BasisMap,
    pub bottom: usize,
    pub directification: Directification,
}

impl JoinClosedBasis {
    /// The label whose image is `β(b) ∨ β(c)`.
    pub fn join(&self, p: &FinPoset, b: usize, c: usize) -> usize {
        let v = p
            .join(self.basis.value(b), self.basis.value(c))
            .expect("lattice joins exist");
        self.directification
            .index_of_value(v)
            .expect("closure contains every join")
    }
}

pub fn close_basis_under_joins(p: &FinPoset, beta: &BasisMap) -> Result<JoinClosedBasis> {
    require_lattice(p)?;
    let fam = Family::new(beta.labels().to_vec(), beta.images().to_vec())?;
    let directification = directify(p, &fam)?;
    Ok(JoinClosedBasis {
        basis: directification.basis(),
        bottom: 0,
        directification,
    })
}

/// `Idl(B, ⊑_β)` for a join-closed `β` has all finite joins, the join of
/// `I` and `J` is `{b | ∃c ∈ I, d ∈ J. β(b) ⊑ β(c ∨ d)}`, and the ideal
/// below `β(b_⊥)` is least.
pub fn idl_supcomplete_check(p: &FinPoset, closed: &JoinClosedBasis) -> Result<bool> {
    let beta = &closed.basis;
    let b = basis_from_order(p, beta)?;
    let idl = idl_poset(&b)?;
    let q = &idl.poset;
    if !q.is_lattice() {
        return Ok(false);
    }
    let n = beta.len();
    let below = |v: usize| Subset::from_indices(n, (0..n).filter(|&x| p.leq(beta.value(x), v)));
    let least = below(beta.value(closed.bottom));
    if idl.index_of_ideal(&least) != q.bottom() {
        return Ok(false);
    }
    for i in q.elements() {
        for j in q.elements() {
            let mut k = Subset::empty(n);
            for c in idl.ideals[i].iter() {
                for d in idl.ideals[j].iter() {
                    k = k.union(&below(beta.value(closed.join(p, c, d))));
                }
            }
            if idl.index_of_ideal(&k) != q.join(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A small basis of `E^D` from small bases of `D` and `E`, obtained by
/// passing to `Idl(B_D, ⊑)` and `Idl(B_E, ⊑)`, taking step functions there,
/// and pulling back along `g ↦ r_E ∘ g ∘ s_D`.
pub fn exp_basis_via_retract(
    d: &Arc<FinPoset>,
    beta_d: &BasisMap,
    e: &Arc<FinPoset>,
    beta_e: &BasisMap,
) -> Result<BasisMap> {
    require_lattice(e)?;
    for (p, beta) in [(d, beta_d), (e, beta_e)] {
        if let Some(v) = small_basis_violation(p, beta) {
            return Err(Error::NotABasis(format!(
                "at `{}`: {}",
                p.name(v.element),
                v.reason
            )));
        }
    }
    let closed_e = close_basis_under_joins(e, beta_e)?;
    let pres_d = algebraic_presentation(d.clone(), beta_d)?;
    let pres_e = algebraic_presentation(e.clone(), &closed_e.basis)?;
    let d_bar = pres_d.idl.poset.clone();
    let e_bar = pres_e.idl.poset.clone();

    let exp = ExponentialPoset::new(d.clone(), e.clone())?;
    let exp_bar = ExponentialPoset::new(d_bar.clone(), e_bar.clone())?;
    let steps = step_basis_in(
        exp_bar.clone(),
        &pres_d.idl.principal_basis(),
        &pres_e.idl.principal_basis(),
    )?;

    // s(f) = s_E ∘ f ∘ r_D and r(g) = r_E ∘ g ∘ s_D.
    let section_graph = (0..exp.len())
        .map(|f| {
            let g: Vec<usize> = d_bar
                .elements()
                .map(|i| pres_e.section.apply(exp.apply(f, pres_d.retraction.apply(i))))
                .collect();
            exp_bar
                .index_of_graph(&g)
                .ok_or_else(|| Error::NotARetract("s(f) is not monotone".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let retraction_graph = (0..exp_bar.len())
        .map(|g| {
            let f: Vec<usize> = d
                .elements()
                .map(|x| pres_e.retraction.apply(exp_bar.apply(g, pres_d.section.apply(x))))
                .collect();
            exp.index_of_graph(&f)
                .ok_or_else(|| Error::NotARetract("r(g) is not monotone".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = MonoMap::new(exp.poset().clone(), exp_bar.poset().clone(), section_graph)?;
    let r = MonoMap::new(exp_bar.poset().clone(), exp.poset().clone(), retraction_graph)?;
    transfer_basis_along_retract(&s, &r, &steps.basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waybelow::check_small_basis;

    fn chain(n: usize) -> Arc<FinPoset> {
        let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        Arc::new(FinPoset::chain(&names).unwrap())
    }

    #[test]
    fn monotone_map_counts() {
        assert_eq!(enumerate_monotone_maps(&chain(2), &chain(2)).unwrap().len(), 3);
        assert_eq!(enumerate_monotone_maps(&chain(3), &chain(3)).unwrap().len(), 10);
        assert_eq!(enumerate_monotone_maps(&chain(1), &chain(4)).unwrap().len(), 4);
        let maps = enumerate_monotone_maps(&chain(2), &chain(2)).unwrap();
        let graphs: Vec<&[usize]> = maps.iter().map(|m| m.graph()).collect();
        assert_eq!(graphs, vec![&[0, 0][..], &[0, 1], &[1, 1]]);
    }

    #[test]
    fn node_budget_is_enforced() {
        let r = enumerate_monotone_graphs(&chain(4), &chain(4), 5, usize::MAX);
        assert!(matches!(r, Err(Error::TooLarge(_))));
    }

    #[test]
    fn step_function_examples() {
        let d = chain(2);
        let e = chain(3);
        assert_eq!(step_function(&d, &e, 0, 2).unwrap().graph(), &[2, 2]);
        assert_eq!(step_function(&d, &e, 1, 0).unwrap().graph(), &[0, 0]);
        assert_eq!(step_function(&d, &e, 1, 2).unwrap().graph(), &[0, 2]);
        let exp = ExponentialPoset::new(d, e).unwrap();
        assert!(step_function_compact_check(&exp, 0, 0).unwrap());
        assert_eq!(exp.poset().name(0), "[c0,c0]");
    }

    #[test]
    fn step_basis_on_sierpinski() {
        let s = chain(2);
        let id = BasisMap::identity(&s);
        let sb = step_basis(&s, &id, &s, &id).unwrap();
        assert_eq!(sb.exp.len(), 3);
        assert_eq!(sb.basis.len(), 3);
        assert_eq!(sb.basis.label(0), "[]");
        assert!(check_small_compact_basis(sb.exp.poset(), &sb.basis));
        for f in 0..sb.exp.len() {
            assert!(sup_of_step_functions_check(&sb.exp, &id, &id, f).unwrap());
        }
    }

    #[test]
    fn step_basis_needs_lattice_target() {
        let anti = Arc::new(FinPoset::antichain(&["a", "b"]).unwrap());
        let id = BasisMap::identity(&anti);
        let s = chain(2);
        assert!(matches!(
            step_basis(&s, &BasisMap::identity(&s), &anti, &id),
            Err(Error::NotALattice(_))
        ));
    }

    #[test]
    fn join_closure_of_sierpinski_basis() {
        let s = chain(2);
        let closed = close_basis_under_joins(&s, &BasisMap::identity(&s)).unwrap();
        assert_eq!(closed.basis.images(), &[0, 1]);
        assert_eq!(closed.join(&s, 0, 1), 1);
        assert!(idl_supcomplete_check(&s, &closed).unwrap());
    }

    #[test]
    fn via_retract_matches_step_basis_fibres() {
        let s = chain(2);
        let id = BasisMap::identity(&s);
        let via = exp_basis_via_retract(&s, &id, &s, &id).unwrap();
        let sb = step_basis(&s, &id, &s, &id).unwrap();
        let p = sb.exp.poset();
        assert!(check_small_basis(p, &via));
        for f in p.elements() {
            let mut a: Vec<usize> = via.way_below_family(p, f).values().to_vec();
            let mut b: Vec<usize> = sb.basis.way_below_family(p, f).values().to_vec();
            a.sort();
            a.dedup();
            b.sort();
            b.dedup();
            assert_eq!(a, b);
        }
    }
}
