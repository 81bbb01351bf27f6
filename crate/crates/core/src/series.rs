//! Sparse polynomials in the even variables t, x1..x5, with an explicit
//! truncation order in the distinguished series variable.
//!
//! Formal power series in `C[[x1]]` or `C[[t]]` are modeled at desk scale:
//! a `PolySeries` stores finitely many monomials plus a certificate `trunc`
//! saying up to which power of the series variable the coefficients are
//! exact. `trunc = None` means the element is an honest polynomial (every
//! omitted coefficient is exactly zero). Operations compute the tightest
//! truncation they can certify rather than silently dropping terms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A variable: t or one of x1..x5.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Var {
    T,
    X(u8),
}

impl Var {
    /// Global slot in monomial exponent vectors: t, x1, x2, x3, x4, x5.
    pub fn slot(self) -> usize {
        match self {
            Var::T => 0,
            Var::X(i) => {
                debug_assert!((1..=5).contains(&i));
                i as usize
            }
        }
    }

    pub fn from_slot(slot: usize) -> Var {
        match slot {
            0 => Var::T,
            i @ 1..=5 => Var::X(i as u8),
            _ => panic!("bad variable slot {slot}"),
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::T => "t".into(),
            Var::X(i) => format!("x{i}"),
        }
    }
}

/// The active variable set of an element.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum VarSet {
    /// {t}
    T,
    /// {x1..x4}, series variable x1 (the E(4,4) ambient)
    X14,
    /// {x1..x5}, series variable x1 (the E(5,10) ambient)
    X15,
    /// {x2..x5}, pure polynomials (quadratic forms, sl4 coefficients)
    X25,
    /// {t, x2..x5}, used for the 5-variable volume identification
    TX25,
}

impl VarSet {
    pub fn vars(self) -> &'static [Var] {
        match self {
            VarSet::T => &[Var::T],
            VarSet::X14 => &[Var::X(1), Var::X(2), Var::X(3), Var::X(4)],
            VarSet::X15 => &[Var::X(1), Var::X(2), Var::X(3), Var::X(4), Var::X(5)],
            VarSet::X25 => &[Var::X(2), Var::X(3), Var::X(4), Var::X(5)],
            VarSet::TX25 => &[Var::T, Var::X(2), Var::X(3), Var::X(4), Var::X(5)],
        }
    }

    pub fn contains(self, v: Var) -> bool {
        self.vars().contains(&v)
    }

    /// Bitmask over global slots.
    pub fn mask(self) -> u8 {
        self.vars().iter().fold(0u8, |m, v| m | (1 << v.slot()))
    }

    /// The distinguished series variable, if any.
    pub fn series_var(self) -> Option<Var> {
        match self {
            VarSet::T => Some(Var::T),
            VarSet::X14 | VarSet::X15 => Some(Var::X(1)),
            VarSet::X25 => None,
            VarSet::TX25 => Some(Var::T),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VarSet::T => "{t}",
            VarSet::X14 => "{x1..x4}",
            VarSet::X15 => "{x1..x5}",
            VarSet::X25 => "{x2..x5}",
            VarSet::TX25 => "{t,x2..x5}",
        }
    }
}

/// Truncation order in the series variable; `None` = exact polynomial.
pub type Trunc = Option<u32>;

pub fn trunc_min(a: Trunc, b: Trunc) -> Trunc {
    match (a, b) {
        (None, t) | (t, None) => t,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

pub fn trunc_sub(t: Trunc, k: u32) -> Trunc {
    t.map(|n| n.saturating_sub(k))
}

pub fn trunc_add(t: Trunc, k: u32) -> Trunc {
    t.map(|n| n + k)
}

/// A monomial in the even variables, exponents indexed by global slot.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Default)]
pub struct EvenMono {
    pub exps: [u16; 6],
}

impl EvenMono {
    pub fn unit() -> Self {
        EvenMono::default()
    }

    pub fn var(v: Var) -> Self {
        EvenMono::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, k: u16) -> Self {
        let mut m = EvenMono::default();
        m.exps[v.slot()] = k;
        m
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.exps[v.slot()]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &EvenMono) -> EvenMono {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a += b;
        }
        m
    }

    /// True if every exponent lies inside the variable set.
    pub fn fits(&self, vars: VarSet) -> bool {
        let mask = vars.mask();
        self.exps
            .iter()
            .enumerate()
            .all(|(s, &e)| e == 0 || mask & (1 << s) != 0)
    }

    pub fn fmt_with_coeff(&self, c: &Scalar) -> String {
        let mono = self.to_string();
        if mono.is_empty() {
            return coeff_string(c, true);
        }
        let prefix = coeff_string(c, false);
        if prefix.is_empty() {
            mono
        } else {
            format!("{prefix}*{mono}")
        }
    }
}

/// Render a coefficient for use in front of a monomial. With
/// `standalone`, always produce something ("1", "-1", ...).
pub(crate) fn coeff_string(c: &Scalar, standalone: bool) -> String {
    if c.is_one() {
        return if standalone { "1".into() } else { String::new() };
    }
    let s = c.to_string();
    // Compound scalars get parentheses so products stay unambiguous.
    if s.contains(" + ") || s.contains(" - ") {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for EvenMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (slot, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = Var::from_slot(slot).name();
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Finitely supported map monomial -> scalar with a truncation certificate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolySeries {
    pub vars: VarSet,
    pub trunc: Trunc,
    terms: BTreeMap<EvenMono, Scalar>,
}

impl PolySeries {
    pub fn zero(vars: VarSet) -> Self {
        PolySeries {
            vars,
            trunc: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarSet, c: Scalar) -> Self {
        let mut p = PolySeries::zero(vars);
        if !c.is_zero() {
            p.terms.insert(EvenMono::unit(), c);
        }
        p
    }

    pub fn one(vars: VarSet) -> Self {
        PolySeries::constant(vars, Scalar::one())
    }

    pub fn monomial(vars: VarSet, mono: EvenMono, c: Scalar) -> Self {
        assert!(mono.fits(vars), "monomial outside variable set");
        let mut p = PolySeries::zero(vars);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn var(vars: VarSet, v: Var) -> Self {
        assert!(vars.contains(v));
        PolySeries::monomial(vars, EvenMono::var(v), Scalar::one())
    }

    pub fn var_pow(vars: VarSet, v: Var, k: u16) -> Self {
        assert!(vars.contains(v));
        PolySeries::monomial(vars, EvenMono::var_pow(v, k), Scalar::one())
    }

    pub fn with_trunc(mut self, trunc: Trunc) -> Self {
        self.trunc = trunc;
        self.normalize();
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&EvenMono, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &EvenMono) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: EvenMono, c: Scalar) {
        debug_assert!(mono.fits(self.vars));
        if let Some(tr) = self.trunc {
            if let Some(sv) = self.vars.series_var() {
                if mono.exp(sv) as u32 >= tr {
                    return;
                }
            }
        }
        let entry = self.terms.entry(mono).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    fn normalize(&mut self) {
        let vars = self.vars;
        let trunc = self.trunc;
        self.terms.retain(|m, c| {
            if c.is_zero() {
                return false;
            }
            match (trunc, vars.series_var()) {
                (Some(tr), Some(sv)) => (m.exp(sv) as u32) < tr,
                _ => true,
            }
        });
    }

    fn check_vars(&self, other: &PolySeries) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarSetMismatch(
                self.vars.name().into(),
                other.vars.name().into(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &PolySeries) -> Result<PolySeries> {
        self.check_vars(other)?;
        let mut out = PolySeries {
            vars: self.vars,
            trunc: trunc_min(self.trunc, other.trunc),
            terms: self.terms.clone(),
        };
        out.normalize();
        for (m, c) in other.terms.iter() {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &PolySeries) -> Result<PolySeries> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> PolySeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> PolySeries {
        let mut out = PolySeries {
            vars: self.vars,
            trunc: self.trunc,
            terms: BTreeMap::new(),
        };
        if s.is_zero() {
            return out;
        }
        for (m, c) in self.terms.iter() {
            out.terms.insert(*m, c * s);
        }
        out
    }

    /// Product, discarding series-variable terms at or above the certified
    /// truncation `min(self.trunc, other.trunc)`.
    pub fn checked_mul(&self, other: &PolySeries) -> Result<PolySeries> {
        self.check_vars(other)?;
        let mut out = PolySeries {
            vars: self.vars,
            trunc: trunc_min(self.trunc, other.trunc),
            terms: BTreeMap::new(),
        };
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in other.terms.iter() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Formal partial derivative. When `v` is the series variable the
    /// certified truncation drops by one.
    pub fn partial(&self, v: Var) -> Result<PolySeries> {
        if !self.vars.contains(v) {
            return Err(Error::NotInVarSet(v.name(), self.vars.name().into()));
        }
        let is_series = self.vars.series_var() == Some(v);
        let mut out = PolySeries {
            vars: self.vars,
            trunc: if is_series {
                trunc_sub(self.trunc, 1)
            } else {
                self.trunc
            },
            terms: BTreeMap::new(),
        };
        let slot = v.slot();
        for (m, c) in self.terms.iter() {
            let e = m.exps[slot];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.exps[slot] = e - 1;
            out.add_term(m2, c.scale_int(e as i64));
        }
        Ok(out)
    }

    /// Homogeneous integration with respect to t: t^n -> t^(n+1)/(n+1).
    /// The certified truncation rises by one.
    pub fn int_t(&self) -> Result<PolySeries> {
        if self.vars != VarSet::T {
            return Err(Error::VarSetMismatch(
                self.vars.name().into(),
                VarSet::T.name().into(),
            ));
        }
        let mut out = PolySeries {
            vars: self.vars,
            trunc: trunc_add(self.trunc, 1),
            terms: BTreeMap::new(),
        };
        for (m, c) in self.terms.iter() {
            let n = m.exps[0];
            let m2 = EvenMono::var_pow(Var::T, n + 1);
            out.add_term(m2, c * &Scalar::ratio(1, n as i64 + 1));
        }
        Ok(out)
    }

    /// Re-embed into a superset variable set.
    pub fn into_varset(&self, vars: VarSet) -> PolySeries {
        let mask = vars.mask();
        assert!(
            self.vars.mask() & !mask == 0 || self.terms.keys().all(|m| m.fits(vars)),
            "cannot embed {} into {}",
            self.vars.name(),
            vars.name()
        );
        PolySeries {
            vars,
            trunc: self.trunc,
            terms: self.terms.clone(),
        }
    }

    /// Rename one variable to another (used for f(t) -> f(x1)).
    pub fn substitute_var(&self, from: Var, to: Var, vars: VarSet) -> PolySeries {
        assert!(vars.contains(to));
        let mut out = PolySeries {
            vars,
            trunc: self.trunc,
            terms: BTreeMap::new(),
        };
        for (m, c) in self.terms.iter() {
            let mut m2 = *m;
            let e = m2.exps[from.slot()];
            m2.exps[from.slot()] = 0;
            m2.exps[to.slot()] += e;
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Largest exponent of the series variable present (0 when empty).
    pub fn series_degree(&self) -> u32 {
        match self.vars.series_var() {
            None => 0,
            Some(sv) => self
                .terms
                .keys()
                .map(|m| m.exp(sv) as u32)
                .max()
                .unwrap_or(0),
        }
    }
}

impl fmt::Display for PolySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| m.fmt_with_coeff(c))
            .collect();
        write!(f, "{}", join_signed(&parts))
    }
}

/// Join rendered terms with " + ", folding leading minus signs into " - ".
pub(crate) fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

/// The spec-level operation names.
pub fn ps_mul(p: &PolySeries, q: &PolySeries) -> Result<PolySeries> {
    p.checked_mul(q)
}

pub fn ps_partial(p: &PolySeries, v: Var) -> Result<PolySeries> {
    p.partial(v)
}

pub fn ps_int_t(p: &PolySeries) -> Result<PolySeries> {
    p.int_t()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t_poly(coeffs: &[(i64, u16)]) -> PolySeries {
        let mut p = PolySeries::zero(VarSet::T);
        for &(c, n) in coeffs {
            p.add_term(EvenMono::var_pow(Var::T, n), Scalar::from_int(c));
        }
        p
    }

    #[test]
    fn truncated_square() {
        // (1+t)^2 with trunc = 2 keeps only 1 + 2t.
        let p = t_poly(&[(1, 0), (1, 1)]).with_trunc(Some(2));
        let sq = p.checked_mul(&p).unwrap();
        assert_eq!(sq, t_poly(&[(1, 0), (2, 1)]).with_trunc(Some(2)));
    }

    #[test]
    fn plain_product() {
        let x2 = PolySeries::var(VarSet::X25, Var::X(2));
        let x3 = PolySeries::var(VarSet::X25, Var::X(3));
        let p = x2.checked_mul(&x3).unwrap();
        assert_eq!(p.to_string(), "x2*x3");
    }

    #[test]
    fn geometric_square_convolution() {
        // (sum_{n<4} t^n)^2 at trunc 4 = 1 + 2t + 3t^2 + 4t^3, by hand.
        let p = t_poly(&[(1, 0), (1, 1), (1, 2), (1, 3)]).with_trunc(Some(4));
        let sq = p.checked_mul(&p).unwrap();
        let expected = t_poly(&[(1, 0), (2, 1), (3, 2), (4, 3)]).with_trunc(Some(4));
        assert_eq!(sq, expected);
    }

    #[test]
    fn partial_examples() {
        let t3 = t_poly(&[(1, 3)]);
        assert_eq!(t3.partial(Var::T).unwrap(), t_poly(&[(3, 2)]));

        let mut p = PolySeries::zero(VarSet::X25);
        let mut m = EvenMono::default();
        m.exps[Var::X(2).slot()] = 2;
        m.exps[Var::X(3).slot()] = 1;
        p.add_term(m, Scalar::one());
        let d2 = p.partial(Var::X(2)).unwrap();
        assert_eq!(d2.to_string(), "2*x2*x3");
    }

    #[test]
    fn partial_drops_series_trunc() {
        let p = PolySeries::var(VarSet::X15, Var::X(1)).with_trunc(Some(4));
        let d = p.partial(Var::X(1)).unwrap();
        assert_eq!(d.trunc, Some(3));
    }

    #[test]
    fn int_t_examples() {
        assert_eq!(t_poly(&[(1, 0)]).int_t().unwrap(), t_poly(&[(1, 1)]));
        let t2 = t_poly(&[(1, 2)]);
        let i = t2.int_t().unwrap();
        assert_eq!(i.coeff(&EvenMono::var_pow(Var::T, 3)), Scalar::ratio(1, 3));
        // d/dt of int is the identity, and trunc gains then loses one.
        let p = t_poly(&[(2, 0), (5, 3)]).with_trunc(Some(4));
        let round = p.int_t().unwrap().partial(Var::T).unwrap();
        assert_eq!(round, p);
    }

    #[test]
    fn varset_mismatch_is_an_error() {
        let p = PolySeries::one(VarSet::T);
        let q = PolySeries::one(VarSet::X25);
        assert!(p.checked_mul(&q).is_err());
    }

    fn small_t_series() -> impl Strategy<Value = PolySeries> {
        proptest::collection::vec((-4i64..=4, 0u16..6), 0..5).prop_map(|v| {
            let mut p = PolySeries::zero(VarSet::T).with_trunc(Some(6));
            for (c, n) in v {
                p.add_term(EvenMono::var_pow(Var::T, n), Scalar::from_int(c));
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn leibniz_rule(p in small_t_series(), q in small_t_series()) {
            let lhs = p.checked_mul(&q).unwrap().partial(Var::T).unwrap();
            let rhs = p
                .partial(Var::T).unwrap().checked_mul(&q).unwrap()
                .checked_add(&p.checked_mul(&q.partial(Var::T).unwrap()).unwrap())
                .unwrap();
            // Compare at the tighter certified truncation.
            let tr = trunc_min(lhs.trunc, rhs.trunc);
            prop_assert_eq!(lhs.with_trunc(tr), rhs.with_trunc(tr));
        }

        #[test]
        fn int_is_section_of_dt(p in small_t_series()) {
            let back = p.int_t().unwrap().partial(Var::T).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
