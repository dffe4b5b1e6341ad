//! Countable ordinals below ε₀ in Cantor normal form.
//!
//! An ordinal is a finite sum `ω^e₁·c₁ + … + ω^eₖ·cₖ` with exponents
//! (themselves ordinals of the same kind) strictly decreasing and integer
//! coefficients ≥ 1. The empty sum is 0 and naturals embed as the single
//! term `ω^0·n`. Canonical form is unique, so structural equality is
//! ordinal equality.
//!
//! Besides comparison and (non-commutative) addition, the module fixes one
//! fundamental-sequence policy for limit ordinals: [`Ordinal::zeta`] returns
//! the `i`-th stage `ζ_i(α)`, a limit ordinal or 0, such that `ζ_i(α) + i`
//! increases with supremum `α`. When `α = β + ω` for limit-or-zero `β` the
//! policy returns `β` for every `i`; the remaining cases follow the usual
//! Wainer-style assignment on the least CNF term.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("fundamental sequence requires a limit ordinal, got {0}")]
    NotLimit(String),
    #[error("fundamental sequence index must be >= 1")]
    ZeroIndex,
    #[error("invalid ordinal notation: {0}")]
    Parse(String),
    #[error("exponents must be strictly decreasing in a CNF term list")]
    BadTermOrder,
    #[error("coefficients must be >= 1")]
    ZeroCoefficient,
}

/// An ordinal below ε₀ in Cantor normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ordinal {
    /// `(exponent, coefficient)` pairs, exponents strictly decreasing.
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn from_nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::from_nat(1))
    }

    /// `ω^e`.
    pub fn omega_pow(e: Ordinal) -> Self {
        Ordinal {
            terms: vec![(e, 1)],
        }
    }

    /// `ω^e · c`; zero when `c = 0`.
    pub fn omega_pow_mul(e: Ordinal, c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(e, c)],
            }
        }
    }

    /// Builds an ordinal from raw CNF terms, validating the invariants.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self, OrdinalError> {
        for pair in terms.windows(2) {
            if pair[0].0 <= pair[1].0 {
                return Err(OrdinalError::BadTermOrder);
            }
        }
        if terms.iter().any(|(_, c)| *c == 0) {
            return Err(OrdinalError::ZeroCoefficient);
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(n)` iff the ordinal is the natural number `n`.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    /// Non-commutative ordinal addition in CNF: terms of `self` with
    /// exponent below the leading exponent of `rhs` are absorbed.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some((lead, lead_coef)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = Vec::new();
        for (e, c) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => {
                    terms.push((e.clone(), c + lead_coef));
                    terms.extend(rhs.terms[1..].iter().cloned());
                    return Ordinal { terms };
                }
                Ordering::Less => break,
            }
        }
        terms.extend(rhs.terms.iter().cloned());
        Ordinal { terms }
    }

    pub fn add_nat(&self, n: u64) -> Ordinal {
        self.add(&Ordinal::from_nat(n))
    }

    /// Splits `ξ = γ + n` with `γ` a limit ordinal or 0 and `n` finite:
    /// `γ` is `ξ` with any trailing exponent-0 term removed.
    pub fn decompose(&self) -> (Ordinal, u64) {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => {
                let gamma = Ordinal {
                    terms: self.terms[..self.terms.len() - 1].to_vec(),
                };
                (gamma, *c)
            }
            _ => (self.clone(), 0),
        }
    }

    /// True iff nonzero with no trailing finite part.
    pub fn is_limit(&self) -> bool {
        match self.terms.last() {
            None => false,
            Some((e, _)) => !e.is_zero(),
        }
    }

    /// The `i`-th fundamental-sequence stage `ζ_i(α)` of a limit `α`.
    ///
    /// Writing `α = δ + ω^e·c` with `ω^e·c` the least CNF term:
    /// * `e = 1`: `ζ_i = δ + ω·(c−1)` for every `i` (here `α = sup(β + i)`
    ///   with `β = δ + ω·(c−1)`, and the stage is pinned to `β`);
    /// * `e = e′+1` with `e′ ≥ 1`: `ζ_i = δ + ω^e·(c−1) + ω^{e′}·i`;
    /// * `e` a limit: `ζ_i = δ + ω^e·(c−1) + ω^{e[i]}` where
    ///   `e[i] = ζ_i(e) + i` is this module's own stage of `e`.
    ///
    /// The result is always a limit ordinal or 0, `ζ_i(α) + i` is strictly
    /// increasing in `i`, and its supremum is `α`.
    pub fn zeta(&self, i: u64) -> Result<Ordinal, OrdinalError> {
        if i == 0 {
            return Err(OrdinalError::ZeroIndex);
        }
        if !self.is_limit() {
            return Err(OrdinalError::NotLimit(self.to_string()));
        }
        let (e, c) = self.terms.last().expect("limit ordinal is nonzero");
        let delta = Ordinal {
            terms: self.terms[..self.terms.len() - 1].to_vec(),
        };
        let head = delta.add(&Ordinal::omega_pow_mul(e.clone(), c - 1));
        if let Some(en) = e.as_nat() {
            debug_assert!(en >= 1);
            if en == 1 {
                Ok(head)
            } else {
                let step = Ordinal::omega_pow_mul(Ordinal::from_nat(en - 1), i);
                Ok(head.add(&step))
            }
        } else {
            let (e_gamma, e_n) = e.decompose();
            if e_n > 0 {
                // successor exponent with infinite part: e = (γ_e + n−1) + 1
                let e_pred = e_gamma.add_nat(e_n - 1);
                Ok(head.add(&Ordinal::omega_pow_mul(e_pred, i)))
            } else {
                let stage = e.zeta(i)?.add_nat(i);
                Ok(head.add(&Ordinal::omega_pow(stage)))
            }
        }
    }

    /// Total number of CNF nodes, counting nested exponents.
    pub fn cnf_size(&self) -> u64 {
        1 + self.terms.iter().map(|(e, _)| e.cnf_size()).sum::<u64>()
    }

    /// Largest coefficient anywhere in the CNF tree (0 for the zero ordinal).
    pub fn max_coefficient(&self) -> u64 {
        self.terms
            .iter()
            .map(|(e, c)| (*c).max(e.max_coefficient()))
            .max()
            .unwrap_or(0)
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp(&b.0) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match a.1.cmp(&b.1) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

// --- text notation -------------------------------------------------------
//
// `0`, `5`, `w`, `w*3`, `w^2+w*3+1`, `w^w`, `w^(w+1)*2+4`.

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            match e.as_nat() {
                Some(1) => write!(f, "w")?,
                Some(n) => write!(f, "w^{n}")?,
                None => {
                    if e.terms.len() == 1 && e.terms[0].1 == 1 && e.terms[0].0.is_finite() {
                        write!(f, "w^{e}")?;
                    } else {
                        write!(f, "w^({e})")?;
                    }
                }
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            input: s.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn nat(&mut self) -> Result<u64, OrdinalError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(OrdinalError::Parse("expected a number".into()));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| OrdinalError::Parse("number out of range".into()))
    }

    fn expr(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'+') {
                self.bump();
                let t = self.term()?;
                acc = acc.add(&t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Ordinal, OrdinalError> {
        self.skip_ws();
        match self.peek() {
            Some(b'w') => {
                self.bump();
                let mut exp = Ordinal::from_nat(1);
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    self.bump();
                    exp = self.atom()?;
                }
                let mut coef = 1;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.bump();
                    self.skip_ws();
                    coef = self.nat()?;
                    if coef == 0 {
                        return Err(OrdinalError::Parse("coefficient must be >= 1".into()));
                    }
                }
                Ok(Ordinal::omega_pow_mul(exp, coef))
            }
            Some(b'0'..=b'9') => Ok(Ordinal::from_nat(self.nat()?)),
            _ => Err(OrdinalError::Parse(format!(
                "unexpected input at byte {}",
                self.pos
            ))),
        }
    }

    fn atom(&mut self) -> Result<Ordinal, OrdinalError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let e = self.expr()?;
                self.skip_ws();
                if self.bump() != Some(b')') {
                    return Err(OrdinalError::Parse("expected ')'".into()));
                }
                Ok(e)
            }
            Some(b'w') => {
                self.bump();
                Ok(Ordinal::omega())
            }
            Some(b'0'..=b'9') => Ok(Ordinal::from_nat(self.nat()?)),
            _ => Err(OrdinalError::Parse("expected exponent".into())),
        }
    }
}

impl std::str::FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let o = p.expr()?;
        p.skip_ws();
        if p.pos != p.input.len() {
            return Err(OrdinalError::Parse(format!(
                "trailing input at byte {}",
                p.pos
            )));
        }
        Ok(o)
    }
}

// --- JSON encoding -------------------------------------------------------
//
// `0` for zero, otherwise an array of `{"exp": <ordinal>, "coef": <int>}`
// in strictly decreasing exponent order. On input a bare nonnegative
// integer and the shorthand string "w" (or any text notation) are accepted.

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if let Some(n) = self.as_nat() {
            return serializer.serialize_u64(n);
        }
        #[derive(Serialize)]
        struct Term<'a> {
            exp: &'a Ordinal,
            coef: u64,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&Term { exp: e, coef: *c })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct OrdinalVisitor;

        impl<'de> Visitor<'de> for OrdinalVisitor {
            type Value = Ordinal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(
                    f,
                    "a nonnegative integer, ordinal string, or CNF term array"
                )
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Ordinal, E> {
                Ok(Ordinal::from_nat(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Ordinal, E> {
                u64::try_from(v)
                    .map(Ordinal::from_nat)
                    .map_err(|_| E::custom("ordinal literal must be nonnegative"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Ordinal, E> {
                v.parse().map_err(|e| E::custom(format!("{e}")))
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Ordinal, A::Error> {
                #[derive(Deserialize)]
                struct Term {
                    exp: Ordinal,
                    coef: u64,
                }
                let mut terms = Vec::new();
                while let Some(t) = seq.next_element::<Term>()? {
                    terms.push((t.exp, t.coef));
                }
                Ordinal::from_terms(terms).map_err(|e| de::Error::custom(format!("{e}")))
            }
        }

        deserializer.deserialize_any(OrdinalVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn compare_basics() {
        assert_eq!(Ordinal::zero().cmp(&Ordinal::zero()), Ordering::Equal);
        assert_eq!(
            Ordinal::omega().cmp(&Ordinal::from_nat(3)),
            Ordering::Greater
        );
        assert_eq!(ord("w^2+1").cmp(&ord("w^2+w")), Ordering::Less);
    }

    /// Brute-force order on ordinals below ω³: triples (a,b,c) standing for
    /// ω²·a + ω·b + c, compared lexicographically.
    fn below_omega3(a: u64, b: u64, c: u64) -> Ordinal {
        Ordinal::omega_pow_mul(Ordinal::from_nat(2), a)
            .add(&Ordinal::omega_pow_mul(Ordinal::from_nat(1), b))
            .add(&Ordinal::from_nat(c))
    }

    #[test]
    fn compare_matches_lexicographic_oracle_below_omega3() {
        let mut all = Vec::new();
        for a in 0..4u64 {
            for b in 0..4u64 {
                for c in 0..4u64 {
                    all.push(((a, b, c), below_omega3(a, b, c)));
                }
            }
        }
        for (ta, oa) in &all {
            for (tb, ob) in &all {
                assert_eq!(oa.cmp(ob), ta.cmp(tb), "mismatch at {ta:?} vs {tb:?}");
            }
        }
    }

    #[test]
    fn add_basics() {
        assert_eq!(Ordinal::omega().add(&Ordinal::from_nat(1)), ord("w+1"));
        assert_eq!(Ordinal::from_nat(1).add(&Ordinal::omega()), ord("w"));
        assert_eq!(ord("w*2+3").add(&ord("w^2")), ord("w^2"));
    }

    #[test]
    fn decompose_basics() {
        assert_eq!(ord("5").decompose(), (Ordinal::zero(), 5));
        assert_eq!(ord("w+3").decompose(), (ord("w"), 3));
        assert_eq!(ord("w^2+w").decompose(), (ord("w^2+w"), 0));
    }

    #[test]
    fn is_limit_basics() {
        assert!(!Ordinal::zero().is_limit());
        assert!(ord("w").is_limit());
        assert!(!ord("w^2+1").is_limit());
        assert!(ord("w^2+w").is_limit());
    }

    #[test]
    fn zeta_pinned_cases() {
        for i in 1..10 {
            assert_eq!(ord("w").zeta(i).unwrap(), Ordinal::zero());
            assert_eq!(ord("w*2").zeta(i).unwrap(), ord("w"));
        }
        assert_eq!(ord("w^2").zeta(4).unwrap(), ord("w*4"));
        assert_eq!(ord("w^w").zeta(2).unwrap(), ord("w^2"));
        assert_eq!(ord("w^3+w^2*2").zeta(3).unwrap(), ord("w^3+w^2+w*3"));
    }

    #[test]
    fn zeta_rejects_bad_input() {
        assert_eq!(ord("w").zeta(0), Err(OrdinalError::ZeroIndex));
        assert!(matches!(ord("w+1").zeta(1), Err(OrdinalError::NotLimit(_))));
        assert!(matches!(
            Ordinal::zero().zeta(1),
            Err(OrdinalError::NotLimit(_))
        ));
    }

    #[test]
    fn text_roundtrip() {
        for s in [
            "0",
            "7",
            "w",
            "w+1",
            "w*3+2",
            "w^2+w*3+1",
            "w^w",
            "w^(w+1)*2+4",
        ] {
            let o = ord(s);
            assert_eq!(o.to_string(), s);
            assert_eq!(ord(&o.to_string()), o);
        }
    }

    #[test]
    fn json_roundtrip_and_shorthand() {
        let o = ord("w^2+w*3+1");
        let js = serde_json::to_string(&o).unwrap();
        let back: Ordinal = serde_json::from_str(&js).unwrap();
        assert_eq!(o, back);

        let z: Ordinal = serde_json::from_str("0").unwrap();
        assert_eq!(z, Ordinal::zero());
        let n: Ordinal = serde_json::from_str("12").unwrap();
        assert_eq!(n, Ordinal::from_nat(12));
        let w: Ordinal = serde_json::from_str("\"w\"").unwrap();
        assert_eq!(w, Ordinal::omega());
        // "w" accepted in exponent position
        let o: Ordinal = serde_json::from_str(r#"[{"exp": "w", "coef": 2}]"#).unwrap();
        assert_eq!(o, ord("w^w*2"));
    }

    /// Ordinals below ω^ω: CNF with finite exponents.
    pub(crate) fn arb_below_omega_omega() -> impl Strategy<Value = Ordinal> {
        proptest::collection::btree_map(0u64..6, 1u64..5, 0..4).prop_map(|m| {
            let mut terms: Vec<(Ordinal, u64)> = m
                .into_iter()
                .map(|(e, c)| (Ordinal::from_nat(e), c))
                .collect();
            terms.reverse();
            Ordinal::from_terms(terms).unwrap()
        })
    }

    pub(crate) fn arb_limit_below_omega_omega() -> impl Strategy<Value = Ordinal> {
        arb_below_omega_omega().prop_map(|o| {
            let (gamma, _) = o.decompose();
            if gamma.is_zero() {
                o.add(&Ordinal::omega()).decompose().0
            } else {
                gamma
            }
        })
    }

    proptest! {
        #[test]
        fn order_is_total_and_transitive(
            a in arb_below_omega_omega(),
            b in arb_below_omega_omega(),
            c in arb_below_omega_omega(),
        ) {
            // antisymmetry
            if a <= b && b <= a {
                prop_assert_eq!(&a, &b);
            }
            // transitivity
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }

        #[test]
        fn add_is_associative_with_identity(
            a in arb_below_omega_omega(),
            b in arb_below_omega_omega(),
            c in arb_below_omega_omega(),
        ) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.add(&Ordinal::zero()), a.clone());
            prop_assert_eq!(Ordinal::zero().add(&a), a);
        }

        #[test]
        fn decompose_reassembles(xi in arb_below_omega_omega()) {
            let (gamma, n) = xi.decompose();
            prop_assert!(gamma.is_zero() || gamma.is_limit());
            prop_assert_eq!(gamma.add(&Ordinal::from_nat(n)), xi);
        }

        #[test]
        fn zeta_stages_are_limits_increasing_and_below(alpha in arb_limit_below_omega_omega()) {
            for i in 1..20u64 {
                let z = alpha.zeta(i).unwrap();
                prop_assert!(z.is_zero() || z.is_limit());
                let cur = z.add_nat(i);
                let nxt = alpha.zeta(i + 1).unwrap().add_nat(i + 1);
                prop_assert!(cur < nxt, "stage {} not increasing for {}", i, alpha);
                prop_assert!(cur < alpha, "stage {} not below {}", i, alpha);
            }
        }

        #[test]
        fn zeta_sampled_supremum(
            alpha in arb_limit_below_omega_omega(),
            raw in arb_below_omega_omega(),
            stage_i in 1..6u64,
            offset in 0..10u64,
        ) {
            // any target below alpha; fall back to an explicit stage plus
            // an offset, which stays below alpha since the stages are
            // nondecreasing
            let beta = if raw < alpha {
                raw
            } else {
                alpha.zeta(stage_i).unwrap().add_nat(offset)
            };
            prop_assert!(beta < alpha);
            let bound = 10 * (beta.cnf_size() + beta.max_coefficient());
            let mut reached = false;
            for i in 1..=bound {
                if alpha.zeta(i).unwrap().add_nat(i) > beta {
                    reached = true;
                    break;
                }
            }
            prop_assert!(reached, "no stage above {} below {} within {}", beta, alpha, bound);
        }
    }
}
