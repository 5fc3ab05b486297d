//! The dyadics as an inductive type with a recursive strict order, exact
//! rational semantics, constructive interpolants, and fuelled stream ideals.
//!
//! `Middle` denotes 0, `Left(x)` denotes `(x - 1) / 2` and `Right(x)`
//! denotes `(x + 1) / 2`, so every dyadic names a dyadic rational in the
//! open interval (-1, 1).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};

/// Arbitrary-precision rationals used as the semantic oracle.
pub type Rational = num_rational::BigRational;

pub const DEFAULT_FUEL: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Dyadic {
    Middle,
    Left(Box<Dyadic>),
    Right(Box<Dyadic>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    L,
    R,
}

use Dyadic::{Left, Middle, Right};

impl Dyadic {
    pub fn left(x: Dyadic) -> Dyadic {
        Left(Box::new(x))
    }

    pub fn right(x: Dyadic) -> Dyadic {
        Right(Box::new(x))
    }

    /// Wraps `inner` in the given constructors, outermost first.
    pub fn from_path(path: &[Side], inner: Dyadic) -> Dyadic {
        path.iter().rev().fold(inner, |acc, s| match s {
            Side::L => Dyadic::left(acc),
            Side::R => Dyadic::right(acc),
        })
    }

    /// Constructors above the innermost `Middle`, outermost first.
    pub fn path(&self) -> Vec<Side> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Middle => return out,
                Left(x) => {
                    out.push(Side::L);
                    cur = x;
                }
                Right(x) => {
                    out.push(Side::R);
                    cur = x;
                }
            }
        }
    }

    /// Number of constructors, counting the final `Middle`.
    pub fn depth(&self) -> usize {
        self.path().len() + 1
    }

    /// Exact value in a ring of ratios; `i64` overflows past depth 62.
    pub fn to_ratio<T: Clone + Integer + From<u8>>(&self) -> Ratio<T> {
        let one = Ratio::from_integer(T::from(1u8));
        let two = Ratio::from_integer(T::from(2u8));
        self.path()
            .iter()
            .rev()
            .fold(Ratio::from_integer(T::from(0u8)), |q, s| match s {
                Side::L => (q - one.clone()) / two.clone(),
                Side::R => (q + one.clone()) / two.clone(),
            })
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.path() {
            f.write_str(match s {
                Side::L => "L.",
                Side::R => "R.",
            })?;
        }
        f.write_str("M")
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Dotted paths read outside-in: `L.R.M` is `Left(Right(Middle))`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: String| Error::Parse { line: 1, message: m };
        let parts: Vec<&str> = s.trim().split('.').collect();
        let (last, init) = parts.split_last().expect("split yields one part");
        if *last != "M" {
            return Err(bad(format!("dyadic path `{s}` must end in M")));
        }
        let path = init
            .iter()
            .map(|p| match *p {
                "L" => Ok(Side::L),
                "R" => Ok(Side::R),
                other => Err(bad(format!("unknown constructor `{other}` in `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Dyadic::from_path(&path, Middle))
    }
}

/// The strict order, by structural recursion on both arguments.
pub fn dy_prec(x: &Dyadic, y: &Dyadic) -> bool {
    match (x, y) {
        (Middle, Middle) => false,
        (Left(_), Middle) => true,
        (Right(_), Middle) => false,
        (Middle, Left(_)) => false,
        (Left(a), Left(b)) => dy_prec(a, b),
        (Right(_), Left(_)) => false,
        (Middle, Right(_)) => true,
        (Left(_), Right(_)) => true,
        (Right(a), Right(b)) => dy_prec(a, b),
    }
}

pub fn dy_eq(x: &Dyadic, y: &Dyadic) -> bool {
    x == y
}

pub fn to_rational(x: &Dyadic) -> Rational {
    x.to_ratio::<BigInt>()
}

/// A `z` with `x ≺ z ≺ y`, by the case analysis of the density argument.
pub fn dy_interpolant(x: &Dyadic, y: &Dyadic) -> Result<Dyadic> {
    match (x, y) {
        (Middle, Right(b)) => Ok(Dyadic::right(Dyadic::left((**b).clone()))),
        (Left(a), Middle) => Ok(Dyadic::left(Dyadic::right((**a).clone()))),
        (Left(_), Right(_)) => Ok(Middle),
        (Right(a), Right(b)) => dy_interpolant(a, b).map(Dyadic::right),
        (Left(a), Left(b)) => dy_interpolant(a, b).map(Dyadic::left),
        _ => Err(Error::PreconditionViolated(format!("{x} is not below {y}"))),
    }
}

/// `(Left(x), Right(x))`, which bracket `x`.
pub fn dy_no_endpoints(x: &Dyadic) -> (Dyadic, Dyadic) {
    (Dyadic::left(x.clone()), Dyadic::right(x.clone()))
}

/// The dyadics as an enumerable abstract basis with constructive
/// interpolation witnesses.
#[derive(Debug, Clone, Copy, Default)]
pub struct DyadicBasis;

/// First failure found while validating the basis laws on a finite range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DyadicLawFailure {
    Transitivity(Dyadic, Dyadic, Dyadic),
    Nullary(Dyadic),
    Binary(Dyadic, Dyadic, Dyadic),
}

impl DyadicBasis {
    /// All dyadics of depth at most `depth`, in increasing order.
    pub fn enumerate(&self, depth: usize) -> Vec<Dyadic> {
        if depth == 0 {
            return Vec::new();
        }
        let inner = self.enumerate(depth - 1);
        let mut out = Vec::with_capacity(2 * inner.len() + 1);
        out.extend(inner.iter().cloned().map(Dyadic::left));
        out.push(Middle);
        out.extend(inner.into_iter().map(Dyadic::right));
        out
    }

    pub fn prec(&self, x: &Dyadic, y: &Dyadic) -> bool {
        dy_prec(x, y)
    }

    /// Witness `b ≺ x`.
    pub fn nullary_witness(&self, x: &Dyadic) -> Dyadic {
        dy_no_endpoints(x).0
    }

    /// Witness `a` with `a1, a2 ≺ a ≺ b`, by trichotomy on `a1` and `a2`.
    pub fn binary_witness(&self, a1: &Dyadic, a2: &Dyadic, b: &Dyadic) -> Result<Dyadic> {
        if !dy_prec(a1, b) || !dy_prec(a2, b) {
            return Err(Error::PreconditionViolated(format!(
                "{a1} and {a2} are not both below {b}"
            )));
        }
        let larger = if dy_prec(a1, a2) { a2 } else { a1 };
        dy_interpolant(larger, b)
    }

    /// Checks transitivity and both interpolation laws, with their
    /// witnesses, on every dyadic of depth at most `depth`.
    pub fn validate_to_depth(&self, depth: usize) -> Option<DyadicLawFailure> {
        let all = self.enumerate(depth);
        let n = all.len();
        let prec: Vec<bool> = all
            .iter()
            .flat_map(|x| all.iter().map(move |y| dy_prec(x, y)))
            .collect();
        let p = |i: usize, j: usize| prec[i * n + j];
        for (k, x) in all.iter().enumerate() {
            if !dy_prec(&self.nullary_witness(x), x) {
                return Some(DyadicLawFailure::Nullary(x.clone()));
            }
            for i in 0..n {
                for j in 0..n {
                    if p(i, k) && p(k, j) && !p(i, j) {
                        return Some(DyadicLawFailure::Transitivity(
                            all[i].clone(),
                            x.clone(),
                            all[j].clone(),
                        ));
                    }
                    if p(i, k) && p(j, k) {
                        let ok = self.binary_witness(&all[i], &all[j], x).is_ok_and(|a| {
                            dy_prec(&all[i], &a) && dy_prec(&all[j], &a) && dy_prec(&a, x)
                        });
                        if !ok {
                            return Some(DyadicLawFailure::Binary(
                                all[i].clone(),
                                all[j].clone(),
                                x.clone(),
                            ));
                        }
                    }
                }
            }
        }
        None
    }
}

pub fn dyadic_abstract_basis() -> DyadicBasis {
    DyadicBasis
}

/// Three-valued answers for semi-decided questions. `NoWithinFuel` and
/// `Unknown` are never refutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    NoWithinFuel,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::NoWithinFuel => "no-within-fuel",
            Answer::Unknown => "unknown",
        })
    }
}

type Chain = Arc<dyn Fn(usize) -> Dyadic + Send + Sync>;

/// An ideal of the dyadics presented by a strictly increasing generator
/// chain: `d` is a member iff `d ≺ chain(n)` for some `n`.
#[derive(Clone)]
pub struct StreamIdeal {
    spec: String,
    chain: Chain,
    /// A dyadic `x` with the ideal contained in `↓x`, when one is known.
    bound: Option<Dyadic>,
}

impl fmt::Debug for StreamIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StreamIdeal")
            .field("spec", &self.spec)
            .field("bound", &self.bound)
            .finish()
    }
}

impl StreamIdeal {
    /// A custom chain. The caller vouches that it is strictly increasing;
    /// `bound`, if given, must dominate every generator.
    pub fn new<F>(spec: impl Into<String>, chain: F, bound: Option<Dyadic>) -> Self
    where
        F: Fn(usize) -> Dyadic + Send + Sync + 'static,
    {
        Self {
            spec: spec.into(),
            chain: Arc::new(chain),
            bound,
        }
    }

    /// `↓x`, generated by replacing the innermost `Middle` of `x` with
    /// `Left(Right^n(Middle))`; these rise strictly towards `x`.
    pub fn principal(x: Dyadic) -> Self {
        let path = x.path();
        let bound = x.clone();
        Self::new(
            format!("principal:{x}"),
            move |n| {
                let rights = Dyadic::from_path(&vec![Side::R; n], Middle);
                Dyadic::from_path(&path, Dyadic::left(rights))
            },
            Some(bound),
        )
    }

    /// The whole of the dyadics, generated by `Right^n(Middle)`.
    pub fn top() -> Self {
        Self::new("top", |n| Dyadic::from_path(&vec![Side::R; n], Middle), None)
    }

    pub fn generator(&self, n: usize) -> Dyadic {
        (self.chain)(n)
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn bound(&self) -> Option<&Dyadic> {
        self.bound.as_ref()
    }

    /// Generators `0..=fuel` are strictly increasing.
    pub fn prefix_increasing(&self, fuel: usize) -> bool {
        (0..fuel).all(|n| dy_prec(&self.generator(n), &self.generator(n + 1)))
    }
}

impl FromStr for StreamIdeal {
    type Err = Error;

    /// `principal:<path>` or `top`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().split_once(':') {
            Some(("principal", path)) => Ok(Self::principal(path.parse()?)),
            None if s.trim() == "top" => Ok(Self::top()),
            _ => Err(Error::Parse {
                line: 1,
                message: format!("unknown chain spec `{s}`; expected principal:<path> or top"),
            }),
        }
    }
}

/// Searches `n ≤ fuel` for `d ≺ chain(n)`.
pub fn stream_member(ideal: &StreamIdeal, d: &Dyadic, fuel: usize) -> Answer {
    if (0..=fuel).any(|n| dy_prec(d, &ideal.generator(n))) {
        Answer::Yes
    } else {
        Answer::NoWithinFuel
    }
}

/// Semi-decides `I ≪ J` through "some `b ∈ J` has `I ⊆ ↓b`". `I` must carry
/// a bound `x` with `I ⊆ ↓x`; a probed generator `b = chain_J(m)`, `m < fuel`,
/// with `x = b` or `x ≺ b` then witnesses the clause. Without a bound the
/// answer is always `Unknown`, since finitely many probes of `I` never
/// certify an inclusion.
pub fn stream_way_below(i: &StreamIdeal, j: &StreamIdeal, fuel: usize) -> Answer {
    let Some(x) = i.bound() else {
        return Answer::Unknown;
    };
    let found = (0..fuel).any(|m| {
        let b = j.generator(m);
        dy_eq(x, &b) || dy_prec(x, &b)
    });
    if found {
        Answer::Yes
    } else {
        Answer::Unknown
    }
}

/// A compact ideal `I` would contain some `x` with `I ⊆ ↓x`, forcing
/// `x ≺ x`. Returns true when `x ≺ x` fails and `↓x ≪ ↓x` is not
/// established at the given fuel.
pub fn no_compact_ideals_evidence(x: &Dyadic, fuel: usize) -> bool {
    let principal = StreamIdeal::principal(x.clone());
    !dy_prec(x, x) && stream_way_below(&principal, &principal, fuel) == Answer::Unknown
}

/// A dyadic of uniformly random depth in `1..=max_depth`.
pub fn random_dyadic<R: Rng + ?Sized>(rng: &mut R, max_depth: usize) -> Dyadic {
    let depth = rng.gen_range(1..=max_depth.max(1));
    let path: Vec<Side> = (1..depth)
        .map(|_| if rng.gen_bool(0.5) { Side::L } else { Side::R })
        .collect();
    Dyadic::from_path(&path, Middle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn q(n: i64, den: i64) -> Rational {
        Rational::new(n.into(), den.into())
    }

    #[test]
    fn order_table_examples() {
        assert!(dy_prec(&d("L.M"), &d("M")));
        assert!(!dy_prec(&d("M"), &d("M")));
        assert!(!dy_prec(&d("R.M"), &d("M")));
        assert!(dy_prec(&d("M"), &d("R.L.M")));
        assert!(!dy_prec(&d("R.M"), &d("L.M")));
    }

    #[test]
    fn rational_values() {
        assert!(to_rational(&d("M")).is_zero());
        assert_eq!(to_rational(&d("L.M")), q(-1, 2));
        assert_eq!(to_rational(&d("R.L.M")), q(1, 4));
        assert_eq!(d("R.L.M").to_ratio::<i64>(), Ratio::new(1, 4));
    }

    #[test]
    fn interpolant_cases() {
        assert_eq!(dy_interpolant(&d("M"), &d("R.M")).unwrap(), d("R.L.M"));
        assert_eq!(dy_interpolant(&d("L.M"), &d("M")).unwrap(), d("L.R.M"));
        assert_eq!(dy_interpolant(&d("L.M"), &d("R.M")).unwrap(), d("M"));
        assert!(matches!(
            dy_interpolant(&d("R.M"), &d("M")),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn no_endpoints_at_middle() {
        let (l, r) = dy_no_endpoints(&Middle);
        assert_eq!((l.to_string(), r.to_string()), ("L.M".into(), "R.M".into()));
        assert!(dy_prec(&l, &Middle) && dy_prec(&Middle, &r));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["M", "L.M", "R.L.R.M"] {
            assert_eq!(d(s).to_string(), s);
        }
        assert!("L.X.M".parse::<Dyadic>().is_err());
        assert!("L.L".parse::<Dyadic>().is_err());
        assert_eq!(d("L.R.M"), Dyadic::left(Dyadic::right(Middle)));
        assert_eq!(d("L.R.M").depth(), 3);
    }

    #[test]
    fn enumeration_is_sorted_and_sized() {
        let all = DyadicBasis.enumerate(4);
        assert_eq!(all.len(), 15);
        assert!(all.windows(2).all(|w| dy_prec(&w[0], &w[1])));
    }

    #[test]
    fn basis_laws_to_depth_five() {
        assert_eq!(dyadic_abstract_basis().validate_to_depth(5), None);
        assert_eq!(DyadicBasis.nullary_witness(&Middle), d("L.M"));
        let a = d("L.M");
        assert_eq!(
            DyadicBasis.binary_witness(&a, &a, &Middle).unwrap(),
            dy_interpolant(&a, &Middle).unwrap()
        );
    }

    #[test]
    fn stream_membership_examples() {
        let i = StreamIdeal::principal(d("R.M"));
        assert_eq!(stream_member(&i, &d("M"), 1), Answer::Yes);
        assert_eq!(stream_member(&i, &d("R.R.M"), 8), Answer::NoWithinFuel);
        assert_eq!(i.generator(0), d("R.L.M"));
        assert!(i.prefix_increasing(16));
        assert!(StreamIdeal::top().prefix_increasing(16));
        assert_eq!(stream_member(&i, &d("L.M"), 0), Answer::Yes);
    }

    #[test]
    fn stream_way_below_examples() {
        let x = d("L.M");
        let ix = StreamIdeal::principal(x.clone());
        let j = StreamIdeal::principal(d("M"));
        assert_eq!(stream_way_below(&ix, &j, 8), Answer::Yes);
        assert_eq!(stream_way_below(&ix, &ix, 64), Answer::Unknown);
        assert_eq!(stream_way_below(&ix, &j, 0), Answer::Unknown);
        assert_eq!(stream_way_below(&StreamIdeal::top(), &j, 64), Answer::Unknown);
        assert!(no_compact_ideals_evidence(&Middle, DEFAULT_FUEL));
    }

    #[test]
    fn chain_spec_parsing() {
        let i: StreamIdeal = "principal:R.M".parse().unwrap();
        assert_eq!(i.spec(), "principal:R.M");
        assert!("top".parse::<StreamIdeal>().is_ok());
        assert!("cofinal:M".parse::<StreamIdeal>().is_err());
    }
}
