//! Element types, brackets and gradings for E(5,10) and E(4,4).
//!
//! E(5,10): even part = zero-divergence vector fields in x1..x5, odd part =
//! closed 2-forms; [X, omega] is the Lie derivative and the odd-odd bracket
//! is the epsilon rule [f d_ij, g d_hk] = eps_{ijhk} f g D_[ijhk].
//!
//! E(4,4): even part = all vector fields in x1..x4, odd part = 1-forms with
//! the lambda = -1/2 twist; the odd-odd bracket d(w1)^w2 + w1^d(w2) is read
//! back as a vector field through the volume form d1234.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::formcalc::{
    form_d, form_lie, form_wedge, lambda_action, vf_div, vf_from_form, DiffForm, VectorField,
};
use crate::scalar::Scalar;
use crate::series::{trunc_min, EvenMono, Trunc, Var, VarSet};

/// Homogeneity of an element under some grading.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Degree {
    /// The zero element (homogeneous of every degree).
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

impl Degree {
    pub fn value(self) -> Option<i64> {
        match self {
            Degree::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

/// Sign of a sequence as a permutation; 0 when entries repeat.
pub fn perm_sign(seq: &[u8]) -> i8 {
    let mut sign = 1i8;
    for i in 0..seq.len() {
        for j in (i + 1)..seq.len() {
            if seq[i] == seq[j] {
                return 0;
            }
            if seq[i] > seq[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// For indices i,j,k,l in 1..=5: the sign of the permutation
/// (i,j,k,l,[ijkl]) and the complementary index, or sign 0 on repeats.
pub fn eps_quintuple(i: u8, j: u8, k: u8, l: u8) -> (i8, Option<u8>) {
    let mask: u32 = [i, j, k, l].iter().fold(0, |m, &v| m | (1 << v));
    if mask.count_ones() < 4 {
        return (0, None);
    }
    let hole = (1..=5).find(|v| mask & (1 << v) == 0).expect("one index free");
    (perm_sign(&[i, j, k, l, hole]), Some(hole))
}

/// Grading of type (a1,...,a5) on E(5,10); the sum must be even so that
/// deg d = -(a1+...+a5)/4 gives integer degrees on elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GradingType510 {
    pub a: [i64; 5],
}

impl GradingType510 {
    pub fn new(a: [i64; 5]) -> Self {
        assert!(a.iter().sum::<i64>() % 2 == 0, "grading type needs even sum");
        GradingType510 { a }
    }

    pub fn principal() -> Self {
        GradingType510::new([2, 2, 2, 2, 2])
    }

    fn a_of(&self, v: Var) -> i64 {
        match v {
            Var::X(i) => self.a[i as usize - 1],
            Var::T => unreachable!("no t in E(5,10)"),
        }
    }

    /// Twice the degree of x^mono (so halves stay exact).
    fn mono_deg2(&self, mono: &EvenMono) -> i64 {
        (1..=5).map(|i| 2 * mono.exps[i] as i64 * self.a[i - 1]).sum()
    }

    fn even_term_deg2(&self, mono: &EvenMono, v: Var) -> i64 {
        self.mono_deg2(mono) - 2 * self.a_of(v)
    }

    fn odd_term_deg2(&self, mono: &EvenMono, mask: u8) -> i64 {
        let sum: i64 = self.a.iter().sum();
        let mut d2 = self.mono_deg2(mono) - sum;
        for slot in 1..6 {
            if mask & (1 << slot) != 0 {
                d2 += 2 * self.a[slot - 1];
            }
        }
        d2
    }
}

/// An element of E(5,10).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct E510Elt {
    even: VectorField,
    odd: DiffForm,
}

/// Coordinate key for exact linear algebra over E(5,10).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum E510Key {
    Even(Var, EvenMono),
    Odd(u8, EvenMono),
}

impl E510Elt {
    /// Validates the defining conditions exactly (on the certified window):
    /// zero divergence for the even part, closedness for the odd part.
    pub fn new(even: VectorField, odd: DiffForm) -> Result<Self> {
        assert_eq!(even.vars, VarSet::X15);
        assert_eq!(odd.vars, VarSet::X15);
        if odd.degree != 2 {
            return Err(Error::WrongFormDegree {
                expected: 2,
                got: odd.degree,
            });
        }
        if !vf_div(&even).is_zero() {
            return Err(Error::Invariant(format!(
                "even part has divergence {}",
                vf_div(&even)
            )));
        }
        if !form_d(&odd).is_zero() {
            return Err(Error::Invariant(format!(
                "odd part is not closed: d gives {}",
                form_d(&odd)
            )));
        }
        Ok(E510Elt { even, odd })
    }

    pub fn zero() -> Self {
        E510Elt {
            even: VectorField::zero(VarSet::X15),
            odd: DiffForm::zero(VarSet::X15, 2),
        }
    }

    pub fn from_even(even: VectorField) -> Result<Self> {
        E510Elt::new(even, DiffForm::zero(VarSet::X15, 2))
    }

    pub fn from_odd(odd: DiffForm) -> Result<Self> {
        E510Elt::new(VectorField::zero(VarSet::X15), odd)
    }

    pub fn even(&self) -> &VectorField {
        &self.even
    }

    pub fn odd(&self) -> &DiffForm {
        &self.odd
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn add(&self, other: &E510Elt) -> Result<E510Elt> {
        Ok(E510Elt {
            even: self.even.add(&other.even)?,
            odd: self.odd.add(&other.odd)?,
        })
    }

    pub fn sub(&self, other: &E510Elt) -> Result<E510Elt> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> E510Elt {
        E510Elt {
            even: self.even.neg(),
            odd: self.odd.neg(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> E510Elt {
        E510Elt {
            even: self.even.scale(s),
            odd: self.odd.scale(s),
        }
    }

    pub fn trunc(&self) -> Trunc {
        trunc_min(self.even.trunc(), self.odd.trunc)
    }

    /// Sparse coordinates for exact linear algebra.
    pub fn coords(&self) -> BTreeMap<E510Key, Scalar> {
        let mut out = BTreeMap::new();
        for (v, p) in self.even.components() {
            for (m, c) in p.terms() {
                out.insert(E510Key::Even(*v, *m), c.clone());
            }
        }
        for ((m, mask), c) in self.odd.terms() {
            out.insert(E510Key::Odd(*mask, *m), c.clone());
        }
        out
    }
}

impl fmt::Display for E510Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_even_odd(&self.even, &self.odd, f)
    }
}

fn fmt_even_odd(even: &VectorField, odd: &DiffForm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match (even.is_zero(), odd.is_zero()) {
        (true, true) => write!(f, "0"),
        (false, true) => write!(f, "{even}"),
        (true, false) => write!(f, "{odd}"),
        (false, false) => write!(f, "{even} + {odd}"),
    }
}

/// The E(5,10) bracket.
pub fn bracket_e510(a: &E510Elt, b: &E510Elt) -> Result<E510Elt> {
    // even-even: vector field commutator.
    let mut even = a.even.commutator(&b.even)?;
    // odd-odd: the epsilon rule, bilinearly over monomials.
    even = even.add(&odd_odd_e510(&a.odd, &b.odd)?)?;
    // even-odd: Lie derivative, with [omega, X] = -[X, omega].
    let odd = form_lie(&a.even, &b.odd)?.sub(&form_lie(&b.even, &a.odd)?)?;
    E510Elt::new(even, odd)
}

fn odd_odd_e510(a: &DiffForm, b: &DiffForm) -> Result<VectorField> {
    let mut out = VectorField::zero(VarSet::X15);
    let trunc = trunc_min(a.trunc, b.trunc);
    let mut comps: BTreeMap<Var, crate::series::PolySeries> = BTreeMap::new();
    for ((ma, maska), ca) in a.terms() {
        let (i, j) = mask_pair(*maska);
        for ((mb, maskb), cb) in b.terms() {
            let (h, k) = mask_pair(*maskb);
            let (sign, hole) = eps_quintuple(i, j, h, k);
            if sign == 0 {
                continue;
            }
            let hole = Var::X(hole.expect("sign nonzero"));
            let p = comps.entry(hole).or_insert_with(|| {
                crate::series::PolySeries::zero(VarSet::X15).with_trunc(trunc)
            });
            p.add_term(ma.mul(mb), (ca * cb).scale_int(sign as i64));
        }
    }
    for (v, p) in comps {
        if !p.is_zero() {
            out = out.add(&VectorField::from_component(VarSet::X15, v, p))?;
        }
    }
    Ok(out)
}

/// The two x-indices of a degree-2 wedge mask.
fn mask_pair(mask: u8) -> (u8, u8) {
    let mut it = (1..6).filter(|s| mask & (1 << s) != 0);
    let i = it.next().expect("degree-2 mask");
    let j = it.next().expect("degree-2 mask");
    (i, j)
}

/// Common degree of all monomial constituents under a type-(a1..a5) grading.
pub fn degree_510(elt: &E510Elt, g: &GradingType510) -> Degree {
    let mut degree2: Option<i64> = None;
    let mut check = |d2: i64| -> bool {
        match degree2 {
            None => {
                degree2 = Some(d2);
                true
            }
            Some(prev) => prev == d2,
        }
    };
    for (v, p) in elt.even.components() {
        for (m, _) in p.terms() {
            if !check(g.even_term_deg2(m, *v)) {
                return Degree::Inhomogeneous;
            }
        }
    }
    for ((m, mask), _) in elt.odd.terms() {
        if !check(g.odd_term_deg2(m, *mask)) {
            return Degree::Inhomogeneous;
        }
    }
    match degree2 {
        None => Degree::Zero,
        Some(d2) => {
            debug_assert!(d2 % 2 == 0, "grading with even sum gives integer degrees");
            Degree::Homogeneous(d2 / 2)
        }
    }
}

/// An element of E(4,4).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct E44Elt {
    even: VectorField,
    odd: DiffForm,
}

/// Coordinate key for exact linear algebra over E(4,4).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum E44Key {
    Even(Var, EvenMono),
    Odd(u8, EvenMono),
}

impl E44Elt {
    pub fn new(even: VectorField, odd: DiffForm) -> Result<Self> {
        assert_eq!(even.vars, VarSet::X14);
        assert_eq!(odd.vars, VarSet::X14);
        if odd.degree != 1 {
            return Err(Error::WrongFormDegree {
                expected: 1,
                got: odd.degree,
            });
        }
        Ok(E44Elt { even, odd })
    }

    pub fn zero() -> Self {
        E44Elt {
            even: VectorField::zero(VarSet::X14),
            odd: DiffForm::zero(VarSet::X14, 1),
        }
    }

    pub fn from_even(even: VectorField) -> Self {
        E44Elt::new(even, DiffForm::zero(VarSet::X14, 1)).expect("degree fixed")
    }

    pub fn from_odd(odd: DiffForm) -> Result<Self> {
        E44Elt::new(VectorField::zero(VarSet::X14), odd)
    }

    pub fn even(&self) -> &VectorField {
        &self.even
    }

    pub fn odd(&self) -> &DiffForm {
        &self.odd
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn add(&self, other: &E44Elt) -> Result<E44Elt> {
        Ok(E44Elt {
            even: self.even.add(&other.even)?,
            odd: self.odd.add(&other.odd)?,
        })
    }

    pub fn sub(&self, other: &E44Elt) -> Result<E44Elt> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> E44Elt {
        E44Elt {
            even: self.even.neg(),
            odd: self.odd.neg(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> E44Elt {
        E44Elt {
            even: self.even.scale(s),
            odd: self.odd.scale(s),
        }
    }

    pub fn trunc(&self) -> Trunc {
        trunc_min(self.even.trunc(), self.odd.trunc)
    }

    /// Multiply both parts by an even polynomial (an x1-power, mostly).
    pub fn mul_poly(&self, p: &crate::series::PolySeries) -> Result<E44Elt> {
        Ok(E44Elt {
            even: self.even.mul_poly(p)?,
            odd: self.odd.mul_poly(p)?,
        })
    }

    pub fn coords(&self) -> BTreeMap<E44Key, Scalar> {
        let mut out = BTreeMap::new();
        for (v, p) in self.even.components() {
            for (m, c) in p.terms() {
                out.insert(E44Key::Even(*v, *m), c.clone());
            }
        }
        for ((m, mask), c) in self.odd.terms() {
            out.insert(E44Key::Odd(*mask, *m), c.clone());
        }
        out
    }
}

impl fmt::Display for E44Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_even_odd(&self.even, &self.odd, f)
    }
}

/// The E(4,4) bracket: W4 commutator, the lambda = -1/2 twisted action,
/// and d(w1)^w2 + w1^d(w2) identified with a vector field.
pub fn bracket_e44(a: &E44Elt, b: &E44Elt) -> Result<E44Elt> {
    let lambda = Scalar::ratio(-1, 2);
    let mut even = a.even.commutator(&b.even)?;
    let oo = form_wedge(&form_d(&a.odd), &b.odd)?.add(&form_wedge(&a.odd, &form_d(&b.odd))?)?;
    even = even.add(&vf_from_form(&oo, VarSet::X14)?)?;
    let odd = lambda_action(&a.even, &b.odd, &lambda)?
        .sub(&lambda_action(&b.even, &a.odd, &lambda)?)?;
    E44Elt::new(even, odd)
}

/// Principal grading of E(4,4): deg x_i = 1, deg d = -2, so every monomial
/// (even or odd) has degree |alpha| - 1.
pub fn degree_e44_principal(elt: &E44Elt) -> Degree {
    let mut degree: Option<i64> = None;
    let mut check = |d: i64| -> bool {
        match degree {
            None => {
                degree = Some(d);
                true
            }
            Some(prev) => prev == d,
        }
    };
    for (_, p) in elt.even.components() {
        for (m, _) in p.terms() {
            if !check(m.total_degree() as i64 - 1) {
                return Degree::Inhomogeneous;
            }
        }
    }
    for ((m, _), _) in elt.odd.terms() {
        if !check(m.total_degree() as i64 - 1) {
            return Degree::Inhomogeneous;
        }
    }
    match degree {
        None => Degree::Zero,
        Some(d) => Degree::Homogeneous(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::PolySeries;

    fn x(i: u8) -> Var {
        Var::X(i)
    }

    fn d2(i: u8, j: u8) -> DiffForm {
        DiffForm::monomial(
            VarSet::X15,
            EvenMono::unit(),
            (1 << i) | (1 << j),
            Scalar::one(),
        )
    }

    fn mono(vars: VarSet, exps: &[(u8, u16)]) -> EvenMono {
        let mut m = EvenMono::unit();
        for &(i, e) in exps {
            m.exps[i as usize] = e;
        }
        let _ = vars;
        m
    }

    #[test]
    fn eps_examples() {
        assert_eq!(eps_quintuple(1, 2, 3, 4), (1, Some(5)));
        assert_eq!(eps_quintuple(2, 1, 3, 4), (-1, Some(5)));
        assert_eq!(eps_quintuple(1, 1, 3, 4), (0, None));
    }

    #[test]
    fn bracket_d12_d34_is_d5() {
        let a = E510Elt::from_odd(d2(1, 2)).unwrap();
        let b = E510Elt::from_odd(d2(3, 4)).unwrap();
        let got = bracket_e510(&a, &b).unwrap();
        let expect = E510Elt::from_even(VectorField::unit(VarSet::X15, x(5))).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn bracket_with_repeated_indices_vanishes() {
        // [x1 d12, d12] = 0.
        let a = E510Elt::from_odd(
            DiffForm::monomial(VarSet::X15, mono(VarSet::X15, &[(1, 1)]), 0b110, Scalar::one()),
        )
        .unwrap();
        let b = E510Elt::from_odd(d2(1, 2)).unwrap();
        assert!(bracket_e510(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn generated_proof_display() {
        // [x1 d23 + x2 d13, x2^r D1] = -(r+1) x2^r d23.
        for r in 0u16..4 {
            let omega = DiffForm::monomial(
                VarSet::X15,
                mono(VarSet::X15, &[(1, 1)]),
                (1 << 2) | (1 << 3),
                Scalar::one(),
            )
            .add(&DiffForm::monomial(
                VarSet::X15,
                mono(VarSet::X15, &[(2, 1)]),
                (1 << 1) | (1 << 3),
                Scalar::one(),
            ))
            .unwrap();
            let a = E510Elt::from_odd(omega).unwrap();
            let vr = E510Elt::from_even(VectorField::from_component(
                VarSet::X15,
                x(1),
                PolySeries::var_pow(VarSet::X15, x(2), r),
            ))
            .unwrap();
            let got = bracket_e510(&a, &vr).unwrap();
            let expect = E510Elt::from_odd(
                DiffForm::monomial(
                    VarSet::X15,
                    mono(VarSet::X15, &[(2, r)]),
                    (1 << 2) | (1 << 3),
                    Scalar::from_int(-(r as i64 + 1)),
                ),
            )
            .unwrap();
            assert_eq!(got, expect, "r = {r}");
        }
    }

    #[test]
    fn degree_510_examples() {
        let g0 = GradingType510::new([0, 1, 1, 1, 1]);
        let d12 = E510Elt::from_odd(d2(1, 2)).unwrap();
        assert_eq!(degree_510(&d12, &g0), Degree::Homogeneous(-1));

        let principal = GradingType510::principal();
        let d23 = E510Elt::from_odd(d2(2, 3)).unwrap();
        assert_eq!(degree_510(&d23, &principal), Degree::Homogeneous(-1));

        let g2 = GradingType510::new([2, 1, 1, 1, 1]);
        let d1 = E510Elt::from_even(VectorField::unit(VarSet::X15, x(1))).unwrap();
        assert_eq!(degree_510(&d1, &g2), Degree::Homogeneous(-2));

        let mixed = d12.add(&d1).unwrap();
        assert_eq!(degree_510(&mixed, &g0), Degree::Inhomogeneous);
        assert_eq!(degree_510(&E510Elt::zero(), &g0), Degree::Zero);
    }

    #[test]
    fn construction_rejects_bad_invariants() {
        // x2 D2 has divergence 1.
        let bad = VectorField::from_component(
            VarSet::X15,
            x(2),
            PolySeries::var(VarSet::X15, x(2)),
        );
        assert!(E510Elt::from_even(bad).is_err());
        // x1 d23 is not closed.
        let bad = DiffForm::monomial(
            VarSet::X15,
            mono(VarSet::X15, &[(1, 1)]),
            (1 << 2) | (1 << 3),
            Scalar::one(),
        );
        assert!(E510Elt::from_odd(bad).is_err());
    }

    #[test]
    fn e44_bracket_examples() {
        let dx1 = E44Elt::from_odd(DiffForm::dx(VarSet::X14, x(1))).unwrap();
        assert!(bracket_e44(&dx1, &dx1).unwrap().is_zero());

        // [x2 dx1, dx1] = 0 because d(x2 dx1) ^ dx1 = -d12 ^ dx1 = 0.
        let x2dx1 = E44Elt::from_odd(DiffForm::poly_wedge(
            &PolySeries::var(VarSet::X14, x(2)),
            1 << 1,
        ))
        .unwrap();
        assert!(bracket_e44(&x2dx1, &dx1).unwrap().is_zero());

        // [x1^n x2 (x2 D2 + x3 D3 + x4 D4), -sqrt2 dx1] = 2 sqrt2 x1^n x2 dx1.
        for n in 0u16..3 {
            let mut field = VectorField::zero(VarSet::X14);
            for i in 2..=4 {
                let mut m = EvenMono::unit();
                m.exps[1] = n;
                m.exps[2] += 1;
                m.exps[i as usize] += 1;
                field = field
                    .add(&VectorField::from_component(
                        VarSet::X14,
                        x(i),
                        PolySeries::monomial(VarSet::X14, m, Scalar::one()),
                    ))
                    .unwrap();
            }
            let a = E44Elt::from_even(field);
            let b = E44Elt::from_odd(
                DiffForm::dx(VarSet::X14, x(1)).scale(&-Scalar::sqrt2()),
            )
            .unwrap();
            let got = bracket_e44(&a, &b).unwrap();
            let mut m = EvenMono::unit();
            m.exps[1] = n;
            m.exps[2] = 1;
            let expect = E44Elt::from_odd(DiffForm::monomial(
                VarSet::X14,
                m,
                1 << 1,
                &Scalar::from_int(2) * &Scalar::sqrt2(),
            ))
            .unwrap();
            assert_eq!(got, expect, "n = {n}");
        }
    }

    #[test]
    fn e44_principal_degrees() {
        let d1 = E44Elt::from_even(VectorField::unit(VarSet::X14, x(1)));
        assert_eq!(degree_e44_principal(&d1), Degree::Homogeneous(-1));
        let dx1 = E44Elt::from_odd(DiffForm::dx(VarSet::X14, x(1))).unwrap();
        assert_eq!(degree_e44_principal(&dx1), Degree::Homogeneous(-1));
        let x2dx3 = E44Elt::from_odd(DiffForm::poly_wedge(
            &PolySeries::var(VarSet::X14, x(2)),
            1 << 3,
        ))
        .unwrap();
        assert_eq!(degree_e44_principal(&x2dx3), Degree::Homogeneous(0));
    }

    #[test]
    fn degree_additivity_under_bracket() {
        let g = GradingType510::new([0, 1, 1, 1, 1]);
        let a = E510Elt::from_odd(d2(1, 2)).unwrap();
        let b = E510Elt::from_odd(d2(3, 4)).unwrap();
        let ab = bracket_e510(&a, &b).unwrap();
        let (da, db, dab) = (
            degree_510(&a, &g).value().unwrap(),
            degree_510(&b, &g).value().unwrap(),
            degree_510(&ab, &g).value().unwrap(),
        );
        assert_eq!(dab, da + db);
    }
}
