//! The contact superalgebra K(1,6) and the presentation of E(1,6).
//!
//! K(1,6) = C[[t]] (x) Lambda of six odd generators, with the contact
//! bracket computable natively in xi/eta or rho coordinates. The operator
//! A(t^n xi_I) = (-1)^{|I|(|I|+1)/2} dt^{3-|I|} t^n xi_I^# (with dt^{-1}
//! homogeneous integration) and iota(f) = f + A(f) cut out a copy of
//! E(1,6) inside K(1,6).
//!
//! E(1,6) itself is kept in its four-summand presentation
//! W1 + sl4(x)C[[t]] + S^2(x)Omega^{-1/2} + Lambda^2(x)Omega^{-3/2};
//! summands are never flattened into an ambient algebra, and the bracket
//! is implemented case by case.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::formcalc::{form_contract, form_d, form_wedge, int_op, vf_from_form, DiffForm, VectorField};
use crate::grassmann::{
    fmt_mono, gr_change_coords, partial_mono, sharp_mono, star_mono, wedge_sign, Coord, GrassElt,
};
use crate::scalar::Scalar;
use crate::series::{
    coeff_string, join_signed, trunc_min, trunc_sub, EvenMono, PolySeries, Trunc, Var, VarSet,
};
use crate::vfalgebras::Degree;

/// An element of K(1,6): map (t exponent, odd monomial mask) -> scalar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct K16Elt {
    pub coord: Coord,
    pub trunc: Trunc,
    terms: BTreeMap<(u32, u8), Scalar>,
}

impl K16Elt {
    pub fn zero(coord: Coord) -> Self {
        K16Elt {
            coord,
            trunc: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(coord: Coord, t_exp: u32, mask: u8, c: Scalar) -> Self {
        let mut e = K16Elt::zero(coord);
        if !c.is_zero() {
            e.terms.insert((t_exp, mask), c);
        }
        e
    }

    pub fn one(coord: Coord) -> Self {
        K16Elt::monomial(coord, 0, 0, Scalar::one())
    }

    pub fn with_trunc(mut self, trunc: Trunc) -> Self {
        self.trunc = trunc;
        if let Some(tr) = trunc {
            self.terms.retain(|(n, _), _| *n < tr);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u8), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, t_exp: u32, mask: u8) -> Scalar {
        self.terms
            .get(&(t_exp, mask))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, t_exp: u32, mask: u8, c: Scalar) {
        if let Some(tr) = self.trunc {
            if t_exp >= tr {
                return;
            }
        }
        let entry = self
            .terms
            .entry((t_exp, mask))
            .or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&(t_exp, mask));
        }
    }

    fn check_coord(&self, other: &K16Elt) -> Result<()> {
        if self.coord != other.coord {
            return Err(Error::CoordMismatch(
                self.coord.name().into(),
                other.coord.name().into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &K16Elt) -> Result<K16Elt> {
        self.check_coord(other)?;
        let mut out = self.clone().with_trunc(trunc_min(self.trunc, other.trunc));
        for ((n, m), c) in other.terms.iter() {
            out.add_term(*n, *m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &K16Elt) -> Result<K16Elt> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> K16Elt {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> K16Elt {
        let mut out = K16Elt::zero(self.coord).with_trunc(self.trunc);
        if s.is_zero() {
            return out;
        }
        for ((n, m), c) in self.terms.iter() {
            out.terms.insert((*n, *m), c * s);
        }
        out
    }

    /// Grassmann slice at a fixed t exponent.
    pub fn grass_slice(&self, t_exp: u32) -> GrassElt {
        let mut g = GrassElt::zero(self.coord);
        for ((n, m), c) in self.terms.iter() {
            if *n == t_exp {
                g.add_term(*m, c.clone());
            }
        }
        g
    }

    pub fn max_t_exp(&self) -> u32 {
        self.terms.keys().map(|(n, _)| *n).max().unwrap_or(0)
    }

    /// Convert between the rho and xi/eta descriptions, t slice by t slice.
    pub fn change_coords(&self, to: Coord) -> K16Elt {
        if self.coord == to {
            return self.clone();
        }
        let mut out = K16Elt::zero(to).with_trunc(self.trunc);
        let mut exps: Vec<u32> = self.terms.keys().map(|(n, _)| *n).collect();
        exps.dedup();
        for n in exps {
            let converted = gr_change_coords(&self.grass_slice(n), to);
            for (m, c) in converted.terms() {
                out.add_term(n, *m, c.clone());
            }
        }
        out
    }

    /// Parity, when all monomials agree.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|(_, m)| m.count_ones() as u8 % 2);
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }
}

impl fmt::Display for K16Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((n, m), c)| {
                let mut factors = Vec::new();
                match n {
                    0 => {}
                    1 => factors.push("t".to_string()),
                    _ => factors.push(format!("t^{n}")),
                }
                if *m != 0 {
                    factors.push(fmt_mono(self.coord, *m, false));
                }
                let body = factors.join("*");
                if body.is_empty() {
                    coeff_string(c, true)
                } else {
                    let prefix = coeff_string(c, false);
                    if prefix.is_empty() {
                        body
                    } else {
                        format!("{prefix}*{body}")
                    }
                }
            })
            .collect();
        write!(f, "{}", join_signed(&parts))
    }
}

/// The contact bracket, computed natively in the element coordinates:
/// [f,g] = (2-E)f dg/dt - df/dt (2-E)g + (-1)^p(f) * (odd-derivative term),
/// where the odd term pairs xi_i with eta_i (i = 2,3,4) in xi/eta
/// coordinates and is the single sum over rho_i in rho coordinates.
pub fn bracket_k16(f: &K16Elt, g: &K16Elt) -> Result<K16Elt> {
    f.check_coord(g)?;
    let coord = f.coord;
    let mut out =
        K16Elt::zero(coord).with_trunc(trunc_sub(trunc_min(f.trunc, g.trunc), 1));
    for ((n, m1), c1) in f.terms.iter() {
        let e1 = m1.count_ones() as i64;
        for ((m, m2), c2) in g.terms.iter() {
            let e2 = m2.count_ones() as i64;
            let c12 = c1 * c2;
            // (2-E)f dg/dt
            if *m > 0 {
                let ws = wedge_sign(*m1, *m2);
                if ws != 0 {
                    let k = (2 - e1) * (*m as i64) * (ws as i64);
                    if k != 0 {
                        out.add_term(n + m - 1, m1 | m2, c12.scale_int(k));
                    }
                }
            }
            // - df/dt (2-E)g
            if *n > 0 {
                let ws = wedge_sign(*m1, *m2);
                if ws != 0 {
                    let k = -(*n as i64) * (2 - e2) * (ws as i64);
                    if k != 0 {
                        out.add_term(n + m - 1, m1 | m2, c12.scale_int(k));
                    }
                }
            }
            // (-1)^p(f) sum of odd-derivative pairings
            let pf_sign = if e1 % 2 == 0 { 1i64 } else { -1 };
            let pairs: &[(u8, u8)] = match coord {
                // xi_i paired with eta_i: bits (0,3), (1,4), (2,5).
                Coord::XiEta => &[(0, 3), (1, 4), (2, 5), (3, 0), (4, 1), (5, 2)],
                Coord::Rho => &[(0, 0), (1, 1), (2, 2), (3, 3), (4, 4), (5, 5)],
            };
            for &(bf, bg) in pairs {
                let Some((s1, r1)) = partial_mono(*m1, bf) else {
                    continue;
                };
                let Some((s2, r2)) = partial_mono(*m2, bg) else {
                    continue;
                };
                let ws = wedge_sign(r1, r2);
                if ws == 0 {
                    continue;
                }
                let k = pf_sign * (s1 as i64) * (s2 as i64) * (ws as i64);
                out.add_term(n + m, r1 | r2, c12.scale_int(k));
            }
        }
    }
    Ok(out)
}

/// Filtration level: the common n + |I| of all monomials.
pub fn filtration_level(f: &K16Elt) -> Degree {
    let mut level: Option<i64> = None;
    for (n, m) in f.terms.keys() {
        let k = *n as i64 + m.count_ones() as i64;
        match level {
            None => level = Some(k),
            Some(prev) if prev == k => {}
            Some(_) => return Degree::Inhomogeneous,
        }
    }
    match level {
        None => Degree::Zero,
        Some(k) => Degree::Homogeneous(k),
    }
}

/// Degree under the principal grading of type (2|1,1,1,1,1,1):
/// deg(t^n m) = 2n + |m| - 2. Homogeneous in both coordinate systems.
pub fn degree_k16_principal(f: &K16Elt) -> Degree {
    let mut degree: Option<i64> = None;
    for (n, m) in f.terms.keys() {
        let d = 2 * *n as i64 + m.count_ones() as i64 - 2;
        match degree {
            None => degree = Some(d),
            Some(prev) if prev == d => {}
            Some(_) => return Degree::Inhomogeneous,
        }
    }
    match degree {
        None => Degree::Zero,
        Some(d) => Degree::Homogeneous(d),
    }
}

/// Degree under the grading of type (1|0,1,1,1,0,0): deg(t^n xi_I eta_J)
/// = n + |I| - 1. Only xi/eta monomials are homogeneous here.
pub fn degree_k16_onezero(f: &K16Elt) -> Degree {
    assert_eq!(
        f.coord,
        Coord::XiEta,
        "the (1|0,1,1,1,0,0) grading is a xi/eta grading"
    );
    let mut degree: Option<i64> = None;
    for (n, m) in f.terms.keys() {
        let xi_count = (m & 0b000111).count_ones() as i64;
        let d = *n as i64 + xi_count - 1;
        match degree {
            None => degree = Some(d),
            Some(prev) if prev == d => {}
            Some(_) => return Degree::Inhomogeneous,
        }
    }
    match degree {
        None => Degree::Zero,
        Some(d) => Degree::Homogeneous(d),
    }
}

/// t^n -> dt^k(t^n): (multiplier, new exponent), with negative k meaning
/// homogeneous integration. Returns None when differentiation kills the
/// power.
fn dt_pow(n: u32, k: i32) -> Option<(Scalar, u32)> {
    if k >= 0 {
        let k = k as u32;
        if n < k {
            return None;
        }
        let mut mult = 1i64;
        for j in 0..k {
            mult *= (n - j) as i64;
        }
        Some((Scalar::from_int(mult), n - k))
    } else {
        let k = (-k) as u32;
        let mut denom = 1i64;
        for j in 1..=k {
            denom *= (n + j) as i64;
        }
        Some((Scalar::ratio(1, denom), n + k))
    }
}

/// The linear operator A. In xi/eta coordinates
/// A(t^n xi_I) = (-1)^{|I|(|I|+1)/2} dt^{3-|I|} t^n xi_I^#;
/// in rho coordinates the same operator is
/// A(t^n rho_I) = -sqrt(-1) (-1)^{|I|(|I|+1)/2} dt^{3-|I|} t^n rho_I*.
///
/// On truncated elements A consumes three orders of headroom (the unknown
/// tail of Grassmann degree 0 is pushed down by dt^3), so finite
/// truncation below 3 is an error rather than a silent lie.
pub fn op_a(f: &K16Elt) -> Result<K16Elt> {
    let out_trunc = match f.trunc {
        None => None,
        Some(tr) => {
            if tr < 3 {
                return Err(Error::Headroom {
                    needed: 3,
                    have: tr,
                });
            }
            Some(tr - 3)
        }
    };
    let mut out = K16Elt::zero(f.coord).with_trunc(out_trunc);
    for ((n, mask), c) in f.terms.iter() {
        let d = mask.count_ones() as i64;
        let (dual_sign, dual_mask) = match f.coord {
            Coord::XiEta => sharp_mono(*mask),
            Coord::Rho => star_mono(*mask),
        };
        let mut factor = Scalar::from_int((dual_sign as i64) * sign_half_pair(d));
        if f.coord == Coord::Rho {
            factor = &factor * &-Scalar::i();
        }
        let Some((mult, n2)) = dt_pow(*n, 3 - d as i32) else {
            continue;
        };
        out.add_term(n2, dual_mask, &(c * &factor) * &mult);
    }
    Ok(out)
}

/// (-1)^{d(d+1)/2}
fn sign_half_pair(d: i64) -> i64 {
    if (d * (d + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// iota(f) = f + A(f).
pub fn op_iota(f: &K16Elt) -> Result<K16Elt> {
    f.add(&op_a(f)?)
}

/// Exceptional pair test on rho monomials t^n rho_I, t^m rho_J.
pub fn is_exceptional_pair(n: u32, mask_i: u8, m: u32, mask_j: u8) -> bool {
    let di = mask_i.count_ones();
    let dj = mask_j.count_ones();
    n == 0 && m == 0 && di + dj >= 4 && (di <= 1 || dj <= 1) && mask_i & mask_j == 0
}

/// The bracket on the iota image, produced through the stated dichotomy:
/// returns ([iota f, iota g], h) with [iota f, iota g] = iota(h), where
/// h = [f,g] + [Af,Ag] when that is nonzero and h = [Af,g] + [f,Ag]
/// otherwise. A mismatch with the directly computed bracket is a closure
/// violation (it would falsify the subalgebra theorem) and is an error.
pub fn bracket_iota_image(f: &K16Elt, g: &K16Elt) -> Result<(K16Elt, K16Elt)> {
    let af = op_a(f)?;
    let ag = op_a(g)?;
    let direct = bracket_k16(&op_iota(f)?, &op_iota(g)?)?;
    let first = bracket_k16(f, g)?.add(&bracket_k16(&af, &ag)?)?;
    let h = if !first.is_zero() {
        first
    } else {
        bracket_k16(&af, g)?.add(&bracket_k16(f, &ag)?)?
    };
    if op_iota(&h)?.sub(&direct)?.is_zero() {
        Ok((direct, h))
    } else {
        Err(Error::ClosureViolation {
            f: f.to_string(),
            g: g.to_string(),
        })
    }
}

// ---------------------------------------------------------------------------
// E(1,6) in its four-summand presentation.
// ---------------------------------------------------------------------------

/// An element of E(1,6). The four summands are kept separate:
/// w1 entries are t^a Dt, sl4 entries are x_u D_v (x) t^a with u,v in 2..5
/// (traceless across the diagonal), s2 entries are x_u x_v (x) t^a dt with
/// u <= v, and lam2 entries are d_uv (x) t^a dt with u < v.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct E16Elt {
    pub trunc: Trunc,
    w1: BTreeMap<u32, Scalar>,
    sl4: BTreeMap<(u8, u8, u32), Scalar>,
    s2: BTreeMap<(u8, u8, u32), Scalar>,
    lam2: BTreeMap<(u8, u8, u32), Scalar>,
}

fn map_add<K: Ord + Copy>(map: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    let entry = map.entry(key).or_insert_with(Scalar::zero);
    *entry += &c;
    if entry.is_zero() {
        map.remove(&key);
    }
}

impl E16Elt {
    pub fn zero() -> Self {
        E16Elt::default()
    }

    pub fn is_zero(&self) -> bool {
        self.w1.is_empty() && self.sl4.is_empty() && self.s2.is_empty() && self.lam2.is_empty()
    }

    pub fn with_trunc(mut self, trunc: Trunc) -> Self {
        self.trunc = trunc;
        if let Some(tr) = trunc {
            self.w1.retain(|a, _| *a < tr);
            self.sl4.retain(|(_, _, a), _| *a < tr);
            self.s2.retain(|(_, _, a), _| *a < tr);
            self.lam2.retain(|(_, _, a), _| *a < tr);
        }
        self
    }

    fn within(&self, a: u32) -> bool {
        self.trunc.map_or(true, |tr| a < tr)
    }

    pub fn add_w1(&mut self, t_exp: u32, c: Scalar) {
        if !c.is_zero() && self.within(t_exp) {
            map_add(&mut self.w1, t_exp, c);
        }
    }

    pub fn add_sl4(&mut self, u: u8, v: u8, t_exp: u32, c: Scalar) {
        debug_assert!((2..=5).contains(&u) && (2..=5).contains(&v));
        if !c.is_zero() && self.within(t_exp) {
            map_add(&mut self.sl4, (u, v, t_exp), c);
        }
    }

    pub fn add_s2(&mut self, u: u8, v: u8, t_exp: u32, c: Scalar) {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        if !c.is_zero() && self.within(t_exp) {
            map_add(&mut self.s2, (u, v, t_exp), c);
        }
    }

    pub fn add_lam2(&mut self, u: u8, v: u8, t_exp: u32, c: Scalar) {
        if u == v {
            return;
        }
        let (u, v, c) = if u < v { (u, v, c) } else { (v, u, -c) };
        if !c.is_zero() && self.within(t_exp) {
            map_add(&mut self.lam2, (u, v, t_exp), c);
        }
    }

    /// f(t) Dt.
    pub fn w1(f: &PolySeries) -> Self {
        assert_eq!(f.vars, VarSet::T);
        let mut out = E16Elt::zero().with_trunc(f.trunc);
        for (m, c) in f.terms() {
            out.add_w1(m.exp(Var::T) as u32, c.clone());
        }
        out
    }

    /// X (x) f(t) for a constant-coefficient traceless linear field in
    /// x2..x5.
    pub fn sl4(x: &VectorField, f: &PolySeries) -> Result<Self> {
        assert_eq!(x.vars, VarSet::X25);
        assert_eq!(f.vars, VarSet::T);
        let mut trace = Scalar::zero();
        let mut entries: Vec<(u8, u8, Scalar)> = Vec::new();
        for (v, p) in x.components() {
            let Var::X(v) = v else { unreachable!() };
            for (m, c) in p.terms() {
                if m.total_degree() != 1 {
                    return Err(Error::Invariant(format!(
                        "sl4 component is not linear: {p}"
                    )));
                }
                let u = (2..=5).find(|&u| m.exp(Var::X(u)) == 1).expect("degree 1");
                if u == *v {
                    trace += c;
                }
                entries.push((u, *v, c.clone()));
            }
        }
        if !trace.is_zero() {
            return Err(Error::Invariant(format!("sl4 part has trace {trace}")));
        }
        let mut out = E16Elt::zero().with_trunc(f.trunc);
        for (u, v, c) in entries {
            for (m, fc) in f.terms() {
                out.add_sl4(u, v, m.exp(Var::T) as u32, &c * fc);
            }
        }
        Ok(out)
    }

    /// q (x) f(t) dt for a quadratic form q in x2..x5.
    pub fn s2(q: &PolySeries, f: &PolySeries) -> Result<Self> {
        assert_eq!(q.vars, VarSet::X25);
        assert_eq!(f.vars, VarSet::T);
        let mut out = E16Elt::zero().with_trunc(f.trunc);
        for (m, c) in q.terms() {
            if m.total_degree() != 2 {
                return Err(Error::Invariant(format!("not a quadratic form: {q}")));
            }
            let mut vars = Vec::new();
            for u in 2..=5u8 {
                for _ in 0..m.exp(Var::X(u)) {
                    vars.push(u);
                }
            }
            for (fm, fc) in f.terms() {
                out.add_s2(vars[0], vars[1], fm.exp(Var::T) as u32, c * fc);
            }
        }
        Ok(out)
    }

    /// omega (x) f(t) dt for a constant-coefficient 2-form in x2..x5.
    pub fn lam2(omega: &DiffForm, f: &PolySeries) -> Result<Self> {
        assert_eq!(omega.vars, VarSet::X25);
        assert_eq!(f.vars, VarSet::T);
        if omega.degree != 2 {
            return Err(Error::WrongFormDegree {
                expected: 2,
                got: omega.degree,
            });
        }
        let mut out = E16Elt::zero().with_trunc(f.trunc);
        for ((m, mask), c) in omega.terms() {
            if m.total_degree() != 0 {
                return Err(Error::Invariant(format!(
                    "lam2 part has non-constant coefficients: {omega}"
                )));
            }
            let mut it = (2..=5u8).filter(|&u| mask & (1 << u) != 0);
            let (u, v) = (it.next().expect("degree 2"), it.next().expect("degree 2"));
            for (fm, fc) in f.terms() {
                out.add_lam2(u, v, fm.exp(Var::T) as u32, c * fc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &E16Elt) -> E16Elt {
        let mut out = self.clone().with_trunc(trunc_min(self.trunc, other.trunc));
        for (a, c) in other.w1.iter() {
            out.add_w1(*a, c.clone());
        }
        for ((u, v, a), c) in other.sl4.iter() {
            out.add_sl4(*u, *v, *a, c.clone());
        }
        for ((u, v, a), c) in other.s2.iter() {
            out.add_s2(*u, *v, *a, c.clone());
        }
        for ((u, v, a), c) in other.lam2.iter() {
            out.add_lam2(*u, *v, *a, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &E16Elt) -> E16Elt {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> E16Elt {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> E16Elt {
        let mut out = E16Elt::zero().with_trunc(self.trunc);
        if s.is_zero() {
            return out;
        }
        for (a, c) in self.w1.iter() {
            out.w1.insert(*a, c * s);
        }
        for (k, c) in self.sl4.iter() {
            out.sl4.insert(*k, c * s);
        }
        for (k, c) in self.s2.iter() {
            out.s2.insert(*k, c * s);
        }
        for (k, c) in self.lam2.iter() {
            out.lam2.insert(*k, c * s);
        }
        out
    }

    pub fn even_part(&self) -> E16Elt {
        E16Elt {
            trunc: self.trunc,
            w1: self.w1.clone(),
            sl4: self.sl4.clone(),
            s2: BTreeMap::new(),
            lam2: BTreeMap::new(),
        }
    }

    pub fn odd_part(&self) -> E16Elt {
        E16Elt {
            trunc: self.trunc,
            w1: BTreeMap::new(),
            sl4: BTreeMap::new(),
            s2: self.s2.clone(),
            lam2: self.lam2.clone(),
        }
    }

    pub fn w1_terms(&self) -> impl Iterator<Item = (&u32, &Scalar)> {
        self.w1.iter()
    }

    pub fn sl4_terms(&self) -> impl Iterator<Item = (&(u8, u8, u32), &Scalar)> {
        self.sl4.iter()
    }

    pub fn s2_terms(&self) -> impl Iterator<Item = (&(u8, u8, u32), &Scalar)> {
        self.s2.iter()
    }

    pub fn lam2_terms(&self) -> impl Iterator<Item = (&(u8, u8, u32), &Scalar)> {
        self.lam2.iter()
    }

    /// The sl4 slice at one t exponent, as a vector field in x2..x5.
    pub fn sl4_slice(&self, t_exp: u32) -> VectorField {
        let mut out = VectorField::zero(VarSet::X25);
        for ((u, v, a), c) in self.sl4.iter() {
            if *a != t_exp {
                continue;
            }
            let p = PolySeries::monomial(VarSet::X25, EvenMono::var(Var::X(*u)), c.clone());
            out = out
                .add(&VectorField::from_component(VarSet::X25, Var::X(*v), p))
                .expect("same varset");
        }
        out
    }

    pub fn s2_slice(&self, t_exp: u32) -> PolySeries {
        let mut out = PolySeries::zero(VarSet::X25);
        for ((u, v, a), c) in self.s2.iter() {
            if *a != t_exp {
                continue;
            }
            let mut m = EvenMono::unit();
            m.exps[*u as usize] += 1;
            m.exps[*v as usize] += 1;
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn lam2_slice(&self, t_exp: u32) -> DiffForm {
        let mut out = DiffForm::zero(VarSet::X25, 2);
        for ((u, v, a), c) in self.lam2.iter() {
            if *a != t_exp {
                continue;
            }
            out.add_term(EvenMono::unit(), (1 << u) | (1 << v), c.clone());
        }
        out
    }

    fn sl4_t_exps(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.sl4.keys().map(|(_, _, a)| *a).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn s2_t_exps(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.s2.keys().map(|(_, _, a)| *a).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn lam2_t_exps(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.lam2.keys().map(|(_, _, a)| *a).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl fmt::Display for E16Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let tpow = |a: &u32| match a {
            0 => String::new(),
            1 => "t*".into(),
            _ => format!("t^{a}*"),
        };
        let mut parts = Vec::new();
        for (a, c) in self.w1.iter() {
            let body = format!("{}Dt", tpow(a));
            let p = coeff_string(c, false);
            parts.push(if p.is_empty() { body } else { format!("{p}*{body}") });
        }
        for ((u, v, a), c) in self.sl4.iter() {
            let body = format!("{}x{u}*D{v}", tpow(a));
            let p = coeff_string(c, false);
            parts.push(if p.is_empty() { body } else { format!("{p}*{body}") });
        }
        for ((u, v, a), c) in self.s2.iter() {
            let body = if u == v {
                format!("{}x{u}^2*dt", tpow(a))
            } else {
                format!("{}x{u}*x{v}*dt", tpow(a))
            };
            let p = coeff_string(c, false);
            parts.push(if p.is_empty() { body } else { format!("{p}*{body}") });
        }
        for ((u, v, a), c) in self.lam2.iter() {
            let body = format!("{}d{u}{v}*dt", tpow(a));
            let p = coeff_string(c, false);
            parts.push(if p.is_empty() { body } else { format!("{p}*{body}") });
        }
        write!(f, "{}", join_signed(&parts))
    }
}

/// The E(1,6) bracket, case by case over the four summands.
pub fn bracket_e16(a: &E16Elt, b: &E16Elt) -> Result<E16Elt> {
    let mut out =
        E16Elt::zero().with_trunc(trunc_sub(trunc_min(a.trunc, b.trunc), 1));

    // (w1, w1): [t^p Dt, t^q Dt] = (q - p) t^{p+q-1} Dt.
    for (p, cp) in a.w1.iter() {
        for (q, cq) in b.w1.iter() {
            let k = *q as i64 - *p as i64;
            if k != 0 {
                out.add_w1(p + q - 1, (cp * cq).scale_int(k));
            }
        }
    }

    // (w1, sl4) and (sl4, w1): X (x) f g'.
    let w1_on_sl4 = |w1: &BTreeMap<u32, Scalar>,
                         sl4: &BTreeMap<(u8, u8, u32), Scalar>,
                         sign: i64,
                         out: &mut E16Elt| {
        for (p, cp) in w1.iter() {
            for ((u, v, q), cq) in sl4.iter() {
                if *q > 0 {
                    out.add_sl4(*u, *v, p + q - 1, (cp * cq).scale_int(sign * *q as i64));
                }
            }
        }
    };
    w1_on_sl4(&a.w1, &b.sl4, 1, &mut out);
    w1_on_sl4(&b.w1, &a.sl4, -1, &mut out);

    // (w1, s2) and (s2, w1): q (x) (f g' + f' g / 2) dt, lambda = -1/2.
    // (w1, lam2) and (lam2, w1): omega (x) (f g' - f' g / 2) dt.
    let w1_on_form = |w1: &BTreeMap<u32, Scalar>,
                          other: &BTreeMap<(u8, u8, u32), Scalar>,
                          half_sign: i64,
                          sign: i64,
                          is_s2: bool,
                          out: &mut E16Elt| {
        for (p, cp) in w1.iter() {
            for ((u, v, q), cq) in other.iter() {
                // f g' + (half_sign/2) f' g with f = t^p, g = t^q.
                let num = 2 * *q as i64 + half_sign * *p as i64;
                if num == 0 || p + q == 0 {
                    continue;
                }
                let c = (cp * cq).scale_int(sign * num) * Scalar::ratio(1, 2);
                if is_s2 {
                    out.add_s2(*u, *v, p + q - 1, c);
                } else {
                    out.add_lam2(*u, *v, p + q - 1, c);
                }
            }
        }
    };
    w1_on_form(&a.w1, &b.s2, 1, 1, true, &mut out);
    w1_on_form(&b.w1, &a.s2, 1, -1, true, &mut out);
    w1_on_form(&a.w1, &b.lam2, -1, 1, false, &mut out);
    w1_on_form(&b.w1, &a.lam2, -1, -1, false, &mut out);

    // (sl4, sl4): [x_u D_v, x_p D_q] = delta_vp x_u D_q - delta_qu x_p D_v.
    for ((u, v, s), cs) in a.sl4.iter() {
        for ((p, q, t), ct) in b.sl4.iter() {
            let c = cs * ct;
            if v == p {
                out.add_sl4(*u, *q, s + t, c.clone());
            }
            if q == u {
                out.add_sl4(*p, *v, s + t, -c);
            }
        }
    }

    // (sl4, s2) and (s2, sl4): X(q) (x) f g dt.
    let sl4_on_s2 = |sl4: &BTreeMap<(u8, u8, u32), Scalar>,
                         s2: &BTreeMap<(u8, u8, u32), Scalar>,
                         sign: i64,
                         out: &mut E16Elt| {
        for ((xu, xv, s), cs) in sl4.iter() {
            for ((p, q, t), ct) in s2.iter() {
                // x_u D_v applied to x_p x_q.
                let c = (cs * ct).scale_int(sign);
                if xv == p {
                    out.add_s2(*xu, *q, s + t, c.clone());
                }
                if xv == q {
                    out.add_s2(*p, *xu, s + t, c);
                }
            }
        }
    };
    sl4_on_s2(&a.sl4, &b.s2, 1, &mut out);
    sl4_on_s2(&b.sl4, &a.s2, -1, &mut out);

    // (sl4, lam2) and (lam2, sl4):
    // [X (x) f, omega (x) g dt] = int(i_X omega) (x) f' g dt
    //                             + L_X omega (x) f g dt.
    let sl4_on_lam2 = |elt_sl4: &E16Elt, elt_lam2: &E16Elt, sign: i64, out: &mut E16Elt| {
        for s in elt_sl4.sl4_t_exps() {
            let x = elt_sl4.sl4_slice(s);
            if x.is_zero() {
                continue;
            }
            for t in elt_lam2.lam2_t_exps() {
                let omega = elt_lam2.lam2_slice(t);
                if omega.is_zero() {
                    continue;
                }
                let ix = form_contract(&x, &omega).expect("same varset");
                // int on the (k=1, m=1) piece, giving a quadratic form.
                if s > 0 {
                    let integrated = int_op(&ix).expect("positive Euler weight");
                    let quad = integrated
                        .coeff_poly(0)
                        .scale(&Scalar::from_int(sign * s as i64));
                    let piece = E16Elt::s2(&quad, &PolySeries::var_pow(VarSet::T, Var::T, (s + t - 1) as u16))
                        .expect("quadratic");
                    *out = out.add(&piece);
                }
                let lie = form_d(&ix).scale(&Scalar::from_int(sign));
                let piece = E16Elt::lam2(&lie, &PolySeries::var_pow(VarSet::T, Var::T, (s + t) as u16))
                    .expect("constant 2-form");
                *out = out.add(&piece);
            }
        }
    };
    sl4_on_lam2(a, b, 1, &mut out);
    sl4_on_lam2(b, a, -1, &mut out);

    // (s2, s2) = 0.

    // (s2, lam2) and (lam2, s2): -(dp ^ omega) (x) f g in sl4.
    let s2_on_lam2 = |elt_s2: &E16Elt, elt_lam2: &E16Elt, out: &mut E16Elt| {
        for s in elt_s2.s2_t_exps() {
            let p = elt_s2.s2_slice(s);
            if p.is_zero() {
                continue;
            }
            let dp = form_d(&DiffForm::from_poly(&p));
            for t in elt_lam2.lam2_t_exps() {
                let omega = elt_lam2.lam2_slice(t);
                if omega.is_zero() {
                    continue;
                }
                let w3 = form_wedge(&dp, &omega).expect("same varset");
                let field = vf_from_form(&w3, VarSet::X25).expect("degree 3");
                let piece = E16Elt::sl4(
                    &field.neg(),
                    &PolySeries::var_pow(VarSet::T, Var::T, (s + t) as u16),
                )
                .expect("traceless by construction");
                *out = out.add(&piece);
            }
        }
    };
    s2_on_lam2(a, b, &mut out);
    s2_on_lam2(b, a, &mut out);

    // (lam2, lam2): f g (sigma ^ omega) read in W1 through the 5-variable
    // volume, plus (1/2) vf(int(sigma)^omega - sigma^int(omega)) (x)
    // (f g' - f' g) in sl4.
    for s in a.lam2_t_exps() {
        let sigma = a.lam2_slice(s);
        if sigma.is_zero() {
            continue;
        }
        let int_sigma = int_op(&sigma).expect("k=2, m=0");
        for t in b.lam2_t_exps() {
            let omega = b.lam2_slice(t);
            if omega.is_zero() {
                continue;
            }
            // W1 part: coefficient of d2345 in sigma ^ omega.
            let top = form_wedge(&sigma, &omega).expect("same varset");
            let c = top.coeff(&EvenMono::unit(), VarSet::X25.mask());
            if !c.is_zero() {
                out.add_w1(s + t, c);
            }
            // sl4 part.
            let k = t as i64 - s as i64; // fg' - f'g on t^s, t^t
            if k == 0 {
                continue;
            }
            let int_omega = int_op(&omega).expect("k=2, m=0");
            let diff = form_wedge(&int_sigma, &omega)
                .expect("same varset")
                .sub(&form_wedge(&sigma, &int_omega).expect("same varset"))
                .expect("same degree");
            let field = vf_from_form(&diff, VarSet::X25).expect("degree 3");
            let field = field.scale(&Scalar::ratio(k, 2));
            let piece = E16Elt::sl4(
                &field,
                &PolySeries::var_pow(VarSet::T, Var::T, (s + t - 1) as u16),
            )
            .expect("traceless by construction");
            out = out.add(&piece);
        }
    }

    Ok(out)
}

/// ad(z)-eigenvalue per monomial summand, z = 2t Dt: w1 t^a has degree
/// 2a-2, sl4 t^a degree 2a, s2 t^a dt degree 2a+1, lam2 t^a dt degree
/// 2a-1.
pub fn degree_e16_principal(a: &E16Elt) -> Degree {
    let mut degree: Option<i64> = None;
    let check = |d: i64, degree: &mut Option<i64>| -> bool {
        match degree {
            None => {
                *degree = Some(d);
                true
            }
            Some(prev) => *prev == d,
        }
    };
    for (t, _) in a.w1.iter() {
        if !check(2 * *t as i64 - 2, &mut degree) {
            return Degree::Inhomogeneous;
        }
    }
    for ((_, _, t), _) in a.sl4.iter() {
        if !check(2 * *t as i64, &mut degree) {
            return Degree::Inhomogeneous;
        }
    }
    for ((_, _, t), _) in a.s2.iter() {
        if !check(2 * *t as i64 + 1, &mut degree) {
            return Degree::Inhomogeneous;
        }
    }
    for ((_, _, t), _) in a.lam2.iter() {
        if !check(2 * *t as i64 - 1, &mut degree) {
            return Degree::Inhomogeneous;
        }
    }
    match degree {
        None => Degree::Zero,
        Some(d) => Degree::Homogeneous(d),
    }
}

/// Basis of the degree-d slice of E(1,6) in the principal grading,
/// enumerated from the four summands.
pub fn e16_principal_slice_dim(d: i64) -> u64 {
    let mut dim = 0u64;
    // w1 t^a: degree 2a-2.
    if d % 2 == 0 && d >= -2 {
        dim += 1;
    }
    // sl4 t^a: degree 2a, dimension 15.
    if d % 2 == 0 && d >= 0 {
        dim += 15;
    }
    // s2 t^a dt: degree 2a+1, dimension 10.
    if d.rem_euclid(2) == 1 && d >= 1 {
        dim += 10;
    }
    // lam2 t^a dt: degree 2a-1, dimension 6.
    if d.rem_euclid(2) == 1 && d >= -1 {
        dim += 6;
    }
    dim
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(coord: Coord, t: u32, mask: u8) -> K16Elt {
        K16Elt::monomial(coord, t, mask, Scalar::one())
    }

    const XI2: u8 = 1 << 0;
    const XI3: u8 = 1 << 1;
    const XI4: u8 = 1 << 2;
    const ETA2: u8 = 1 << 3;
    const ETA3: u8 = 1 << 4;
    const ETA4: u8 = 1 << 5;

    #[test]
    fn contact_bracket_basics() {
        // [1, t] = 2.
        let one = K16Elt::one(Coord::XiEta);
        let t = k(Coord::XiEta, 1, 0);
        assert_eq!(bracket_k16(&one, &t).unwrap(), K16Elt::one(Coord::XiEta).scale(&Scalar::from_int(2)));

        // [xi_i, eta_i] = -1 for each pair.
        for (xi, eta) in [(XI2, ETA2), (XI3, ETA3), (XI4, ETA4)] {
            let got = bracket_k16(&k(Coord::XiEta, 0, xi), &k(Coord::XiEta, 0, eta)).unwrap();
            assert_eq!(got, K16Elt::one(Coord::XiEta).neg());
        }
    }

    #[test]
    fn theorem_4_6_generation_identity() {
        // t^m rho_I = (-1)^{|I|+1} [t^{m-1} rho_i rho_I, t rho_i], i not in I.
        for m in 1u32..4 {
            for mask in 0u8..64 {
                let Some(i) = (0..6).find(|b| mask & (1 << b) == 0) else {
                    continue;
                };
                let f = bracket_k16(
                    &k(Coord::Rho, m - 1, mask | (1 << i)),
                    &k(Coord::Rho, 1, 1 << i),
                )
                .unwrap();
                // rho_i rho_I = sign * monomial(mask | 1<<i): rho_i pulled to
                // the front costs the number of I-bits below i.
                let below = (mask & ((1 << i) - 1)).count_ones();
                let front_sign = if below % 2 == 0 { 1 } else { -1 };
                let parity_sign = if (mask.count_ones() + 1) % 2 == 0 { 1 } else { -1 };
                let expect = k(Coord::Rho, m, mask).scale(&Scalar::from_int(front_sign * parity_sign));
                assert_eq!(f, expect, "m={m} mask={mask:#08b} i={i}");
            }
        }
    }

    #[test]
    fn bracket_coordinate_consistency() {
        // The xi/eta bracket agrees with the rho bracket after conversion.
        let pairs = [
            (k(Coord::XiEta, 1, XI2 | ETA3), k(Coord::XiEta, 0, ETA2)),
            (k(Coord::XiEta, 2, XI3 | XI4 | ETA4), k(Coord::XiEta, 1, XI2 | ETA2)),
            (
                K16Elt::one(Coord::XiEta).add(&k(Coord::XiEta, 1, XI2 | XI3 | XI4)).unwrap(),
                k(Coord::XiEta, 0, ETA2 | ETA3 | ETA4),
            ),
        ];
        for (f, g) in pairs {
            let direct = bracket_k16(&f, &g).unwrap();
            let via_rho = bracket_k16(
                &f.change_coords(Coord::Rho),
                &g.change_coords(Coord::Rho),
            )
            .unwrap()
            .change_coords(Coord::XiEta);
            assert_eq!(direct, via_rho);
        }
    }

    #[test]
    fn filtration_and_degrees() {
        assert_eq!(
            filtration_level(&k(Coord::Rho, 0, 0b11)),
            Degree::Homogeneous(2)
        );
        assert_eq!(
            filtration_level(&k(Coord::XiEta, 2, XI2)),
            Degree::Homogeneous(3)
        );
        assert_eq!(filtration_level(&K16Elt::one(Coord::Rho)), Degree::Homogeneous(0));
        assert_eq!(filtration_level(&K16Elt::zero(Coord::Rho)), Degree::Zero);

        assert_eq!(
            degree_k16_principal(&k(Coord::Rho, 1, 0b1)),
            Degree::Homogeneous(1)
        );
        assert_eq!(
            degree_k16_onezero(&k(Coord::XiEta, 2, XI2 | ETA3)),
            Degree::Homogeneous(2)
        );
    }

    #[test]
    fn op_a_examples() {
        // A(eta2) = 0: one odd factor, dt^2 kills t^0.
        assert!(op_a(&k(Coord::XiEta, 0, ETA2)).unwrap().is_zero());
        // A is zero on L_0, L_1, L_2.
        for t in 0u32..3 {
            for mask in 0u8..64 {
                if t + mask.count_ones() <= 2 {
                    assert!(
                        op_a(&k(Coord::XiEta, t, mask)).unwrap().is_zero(),
                        "t={t} mask={mask:#08b}"
                    );
                }
            }
        }
        // A(xi_i eta_j eta_k) = -xi_i eta_j eta_k for cyclic (i,j,k).
        for (i, j, kk) in [(0u8, 4u8, 5u8), (1, 5, 3), (2, 3, 4)] {
            let mask = (1 << i) | (1 << j) | (1 << kk);
            let m = k(Coord::XiEta, 0, mask);
            assert_eq!(op_a(&m).unwrap(), m.neg(), "i={i} j={j} k={kk}");
        }
        // A(A(f)) = f whenever A(f) != 0, over every monomial with small t.
        for t in 0u32..4 {
            for mask in 0u8..64 {
                let m = k(Coord::Rho, t, mask);
                let a = op_a(&m).unwrap();
                if !a.is_zero() {
                    assert_eq!(op_a(&a).unwrap(), m, "t={t} mask={mask:#08b}");
                }
            }
        }
    }

    #[test]
    fn op_a_rho_and_xieta_agree() {
        for t in 0u32..4 {
            for mask in 0u8..64 {
                let m = k(Coord::XiEta, t, mask);
                let direct = op_a(&m).unwrap();
                let via_rho = op_a(&m.change_coords(Coord::Rho))
                    .unwrap()
                    .change_coords(Coord::XiEta);
                assert_eq!(direct, via_rho, "t={t} mask={mask:#08b}");
            }
        }
    }

    #[test]
    fn op_a_headroom() {
        let m = k(Coord::XiEta, 0, XI2).with_trunc(Some(2));
        assert_eq!(op_a(&m), Err(Error::Headroom { needed: 3, have: 2 }));
        let m = k(Coord::XiEta, 0, XI2).with_trunc(Some(5));
        assert_eq!(op_a(&m).unwrap().trunc, Some(2));
    }

    #[test]
    fn a_injective_on_high_filtration() {
        // On each L_k with k >= 3, A has zero kernel (checked monomial-wise
        // plus sign structure: A maps distinct monomials of L_k to nonzero
        // multiples of distinct monomials).
        use std::collections::BTreeSet;
        for level in 3u32..8 {
            let mut images = BTreeSet::new();
            for t in 0..=level {
                for mask in 0u8..64 {
                    if t + mask.count_ones() != level {
                        continue;
                    }
                    let a = op_a(&k(Coord::Rho, t, mask)).unwrap();
                    assert!(!a.is_zero(), "A kills t^{t} mask {mask:#08b} in L_{level}");
                    assert_eq!(a.num_terms(), 1);
                    let key = *a.terms().next().unwrap().0;
                    assert!(images.insert(key), "A collides on L_{level}");
                }
            }
        }
    }

    #[test]
    fn exceptional_pairs() {
        assert!(is_exceptional_pair(0, 0b1111, 0, 0b10000)); // (rho1..rho4, rho5)
        assert!(!is_exceptional_pair(1, 0b1111, 0, 0)); // n != 0
        assert!(!is_exceptional_pair(0, 0b11, 0, 0b1100)); // both sides size 2
        assert!(!is_exceptional_pair(0, 0b1111, 0, 0b1)); // product vanishes
    }

    #[test]
    fn iota_bracket_dichotomy_smoke() {
        for (fm, gm, ft, gt) in [
            (0b11u8, 0b1100u8, 0u32, 0u32),
            (0b1111, 0b10000, 0, 0),
            (0b101, 0b10, 1, 0),
            (0b111111, 0b1, 0, 2),
        ] {
            let f = k(Coord::Rho, ft, fm);
            let g = k(Coord::Rho, gt, gm);
            let (bracket, h) = bracket_iota_image(&f, &g).unwrap();
            assert_eq!(op_iota(&h).unwrap(), bracket);
        }
    }

    #[test]
    fn e16_bracket_worked_examples() {
        let t_pow = |p: u16| PolySeries::var_pow(VarSet::T, Var::T, p);

        // [p (x) f dt, q (x) g dt] = 0.
        let p = PolySeries::monomial(
            VarSet::X25,
            EvenMono::var_pow(Var::X(2), 2),
            Scalar::one(),
        );
        let q = PolySeries::var(VarSet::X25, Var::X(3))
            .checked_mul(&PolySeries::var(VarSet::X25, Var::X(4)))
            .unwrap();
        let a = E16Elt::s2(&p, &t_pow(1)).unwrap();
        let b = E16Elt::s2(&q, &t_pow(2)).unwrap();
        assert!(bracket_e16(&a, &b).unwrap().is_zero());

        // [d_ij (x) f dt, d_hk (x) g dt] with eps(1ijhk) = 1, here
        // (i,j,h,k) = (2,3,4,5), f = t^2, g = t:
        // f g Dt + (1/4)(fg' - f'g)(x_i D_i + x_j D_j - x_h D_h - x_k D_k).
        let d23 = DiffForm::monomial(VarSet::X25, EvenMono::unit(), 0b001100, Scalar::one());
        let d45 = DiffForm::monomial(VarSet::X25, EvenMono::unit(), 0b110000, Scalar::one());
        let a = E16Elt::lam2(&d23, &t_pow(2)).unwrap();
        let b = E16Elt::lam2(&d45, &t_pow(1)).unwrap();
        let got = bracket_e16(&a, &b).unwrap();
        let mut expect = E16Elt::zero();
        expect.add_w1(3, Scalar::one());
        // fg' - f'g = t^2 - 2t*t = -t^2.
        for (u, sgn) in [(2u8, 1i64), (3, 1), (4, -1), (5, -1)] {
            expect.add_sl4(u, u, 2, Scalar::ratio(-sgn, 4));
        }
        assert_eq!(got, expect);

        // [x_h D_k (x) f, d_ij (x) g dt] with i = k:
        // d_hj (x) fg dt + (1/2) x_h x_j (x) f'g dt.
        // Take (h,k) = (2,3), (i,j) = (3,4), f = t^2, g = t.
        let x2d3 = VectorField::from_component(
            VarSet::X25,
            Var::X(3),
            PolySeries::var(VarSet::X25, Var::X(2)),
        );
        let d34 = DiffForm::monomial(VarSet::X25, EvenMono::unit(), 0b011000, Scalar::one());
        let a = E16Elt::sl4(&x2d3, &t_pow(2)).unwrap();
        let b = E16Elt::lam2(&d34, &t_pow(1)).unwrap();
        let got = bracket_e16(&a, &b).unwrap();
        let mut expect = E16Elt::zero();
        expect.add_lam2(2, 4, 3, Scalar::one());
        expect.add_s2(2, 4, 2, Scalar::one()); // (1/2) * f'g = (1/2) * 2t^2
        assert_eq!(got, expect);
    }

    #[test]
    fn e16_principal_dimension_profile() {
        assert_eq!(e16_principal_slice_dim(-2), 1);
        assert_eq!(e16_principal_slice_dim(-1), 6);
        assert_eq!(e16_principal_slice_dim(0), 16);
        assert_eq!(e16_principal_slice_dim(1), 16);
    }

    #[test]
    fn e16_degree_examples() {
        let mut dt = E16Elt::zero();
        dt.add_w1(0, Scalar::one());
        assert_eq!(degree_e16_principal(&dt), Degree::Homogeneous(-2));
        let mut dij = E16Elt::zero();
        dij.add_lam2(2, 3, 0, Scalar::one());
        assert_eq!(degree_e16_principal(&dij), Degree::Homogeneous(-1));
        let mut qd = E16Elt::zero();
        qd.add_s2(2, 3, 0, Scalar::one());
        assert_eq!(degree_e16_principal(&qd), Degree::Homogeneous(1));
    }

    #[test]
    fn sl4_constructor_validates() {
        // x2 D2 alone has trace 1.
        let bad = VectorField::from_component(
            VarSet::X25,
            Var::X(2),
            PolySeries::var(VarSet::X25, Var::X(2)),
        );
        assert!(E16Elt::sl4(&bad, &PolySeries::one(VarSet::T)).is_err());
        // x2 D2 - x3 D3 is fine.
        let good = bad
            .add(
                &VectorField::from_component(
                    VarSet::X25,
                    Var::X(3),
                    PolySeries::var(VarSet::X25, Var::X(3)),
                )
                .neg(),
            )
            .unwrap();
        assert!(E16Elt::sl4(&good, &PolySeries::one(VarSet::T)).is_ok());
    }
}
