//! Cartan calculus: vector fields and differential forms with polynomial
//! or truncated-series coefficients, together with d, wedge, contraction,
//! Lie derivative, divergence, the lambda-twisted action and the homotopy
//! operator int = i_E/(k+m).
//!
//! Wedge factors are stored as ascending bitmasks over the global variable
//! slots (t, x1, ..., x5), signs absorbed into coefficients. The volume
//! form of a variable set is always the ascending wedge of its variables;
//! `vf_from_form` inverts X -> i_X(vol) with that orientation.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{
    coeff_string, join_signed, trunc_min, trunc_sub, EvenMono, PolySeries, Trunc, Var, VarSet,
};

/// Inversion-count sign for wedging two ascending slot masks.
fn slot_wedge_sign(a: u8, b: u8) -> i8 {
    if a & b != 0 {
        return 0;
    }
    let mut inv = 0u32;
    for i in 0..6 {
        if a & (1 << i) != 0 {
            inv += (b & ((1 << i) - 1)).count_ones();
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A vector field sum_v f_v d/dv over one variable set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    pub vars: VarSet,
    components: BTreeMap<Var, PolySeries>,
}

impl VectorField {
    pub fn zero(vars: VarSet) -> Self {
        VectorField {
            vars,
            components: BTreeMap::new(),
        }
    }

    /// The coordinate field d/dv.
    pub fn unit(vars: VarSet, v: Var) -> Self {
        VectorField::from_component(vars, v, PolySeries::one(vars))
    }

    pub fn from_component(vars: VarSet, v: Var, f: PolySeries) -> Self {
        assert!(vars.contains(v), "component variable outside set");
        assert_eq!(f.vars, vars);
        let mut x = VectorField::zero(vars);
        if !f.is_zero() {
            x.components.insert(v, f);
        }
        x
    }

    pub fn component(&self, v: Var) -> PolySeries {
        self.components
            .get(&v)
            .cloned()
            .unwrap_or_else(|| PolySeries::zero(self.vars))
    }

    pub fn components(&self) -> impl Iterator<Item = (&Var, &PolySeries)> {
        self.components.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn trunc(&self) -> Trunc {
        let mut t = None;
        for f in self.components.values() {
            t = trunc_min(t, f.trunc);
        }
        t
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        if self.vars != other.vars {
            return Err(Error::VarSetMismatch(
                self.vars.name().into(),
                other.vars.name().into(),
            ));
        }
        let mut out = self.clone();
        for (v, f) in other.components.iter() {
            let sum = out.component(*v).checked_add(f)?;
            if sum.is_zero() {
                out.components.remove(v);
            } else {
                out.components.insert(*v, sum);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> VectorField {
        let mut out = self.clone();
        for f in out.components.values_mut() {
            *f = f.neg();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> VectorField {
        let mut out = VectorField::zero(self.vars);
        if s.is_zero() {
            return out;
        }
        for (v, f) in self.components.iter() {
            out.components.insert(*v, f.scale(s));
        }
        out
    }

    pub fn mul_poly(&self, p: &PolySeries) -> Result<VectorField> {
        let mut out = VectorField::zero(self.vars);
        for (v, f) in self.components.iter() {
            let prod = f.checked_mul(p)?;
            if !prod.is_zero() {
                out.components.insert(*v, prod);
            }
        }
        Ok(out)
    }

    /// Apply the field to a function: X(f) = sum_v X_v df/dv.
    pub fn apply(&self, f: &PolySeries) -> Result<PolySeries> {
        let mut out = PolySeries::zero(self.vars);
        for (v, xv) in self.components.iter() {
            out = out.checked_add(&xv.checked_mul(&f.partial(*v)?)?)?;
        }
        Ok(out)
    }

    /// Commutator of vector fields: [X,Y](v) = X(Y_v) - Y(X_v).
    pub fn commutator(&self, other: &VectorField) -> Result<VectorField> {
        let mut out = VectorField::zero(self.vars);
        for v in self.vars.vars() {
            let a = self.apply(&other.component(*v))?;
            let b = other.apply(&self.component(*v))?;
            let c = a.checked_sub(&b)?;
            if !c.is_zero() {
                out.components.insert(*v, c);
            }
        }
        Ok(out)
    }

    /// The Euler field of the variable set, sum_v x_v d/dv.
    pub fn euler(vars: VarSet) -> Self {
        let mut out = VectorField::zero(vars);
        for v in vars.vars() {
            out.components.insert(*v, PolySeries::var(vars, *v));
        }
        out
    }

    pub fn into_varset(&self, vars: VarSet) -> VectorField {
        let mut out = VectorField::zero(vars);
        for (v, f) in self.components.iter() {
            out.components.insert(*v, f.into_varset(vars));
        }
        out
    }
}

/// A differential form; terms keyed by (even monomial, ascending wedge mask).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffForm {
    pub vars: VarSet,
    pub degree: u8,
    pub trunc: Trunc,
    terms: BTreeMap<(EvenMono, u8), Scalar>,
}

impl DiffForm {
    pub fn zero(vars: VarSet, degree: u8) -> Self {
        DiffForm {
            vars,
            degree,
            trunc: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn with_trunc(mut self, trunc: Trunc) -> Self {
        self.trunc = trunc;
        let vars = self.vars;
        if let (Some(tr), Some(sv)) = (trunc, vars.series_var()) {
            self.terms.retain(|(m, _), _| (m.exp(sv) as u32) < tr);
        }
        self
    }

    pub fn monomial(vars: VarSet, mono: EvenMono, mask: u8, c: Scalar) -> Self {
        assert!(mono.fits(vars));
        assert_eq!(mask & !vars.mask(), 0, "wedge factor outside variable set");
        let mut f = DiffForm::zero(vars, mask.count_ones() as u8);
        if !c.is_zero() {
            f.terms.insert((mono, mask), c);
        }
        f
    }

    /// dx_v as a 1-form.
    pub fn dx(vars: VarSet, v: Var) -> Self {
        assert!(vars.contains(v));
        DiffForm::monomial(vars, EvenMono::unit(), 1 << v.slot(), Scalar::one())
    }

    /// The ascending volume form of the variable set.
    pub fn volume(vars: VarSet) -> Self {
        DiffForm::monomial(vars, EvenMono::unit(), vars.mask(), Scalar::one())
    }

    /// A 0-form from a polynomial.
    pub fn from_poly(p: &PolySeries) -> Self {
        let mut f = DiffForm::zero(p.vars, 0);
        f.trunc = p.trunc;
        for (m, c) in p.terms() {
            f.terms.insert((*m, 0), c.clone());
        }
        f
    }

    /// p * dx_mask with all of p's terms.
    pub fn poly_wedge(p: &PolySeries, mask: u8) -> Self {
        let mut f = DiffForm::zero(p.vars, mask.count_ones() as u8);
        assert_eq!(mask & !p.vars.mask(), 0);
        f.trunc = p.trunc;
        for (m, c) in p.terms() {
            f.terms.insert((*m, mask), c.clone());
        }
        f
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(EvenMono, u8), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &EvenMono, mask: u8) -> Scalar {
        self.terms
            .get(&(*mono, mask))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// The polynomial coefficient of one wedge mask.
    pub fn coeff_poly(&self, mask: u8) -> PolySeries {
        let mut p = PolySeries::zero(self.vars).with_trunc(self.trunc);
        for ((m, s), c) in self.terms.iter() {
            if *s == mask {
                p.add_term(*m, c.clone());
            }
        }
        p
    }

    pub fn add_term(&mut self, mono: EvenMono, mask: u8, c: Scalar) {
        debug_assert_eq!(mask.count_ones() as u8, self.degree);
        if let (Some(tr), Some(sv)) = (self.trunc, self.vars.series_var()) {
            if mono.exp(sv) as u32 >= tr {
                return;
            }
        }
        let entry = self
            .terms
            .entry((mono, mask))
            .or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&(mono, mask));
        }
    }

    fn check_compat(&self, other: &DiffForm) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarSetMismatch(
                self.vars.name().into(),
                other.vars.name().into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &DiffForm) -> Result<DiffForm> {
        self.check_compat(other)?;
        assert_eq!(self.degree, other.degree, "cannot add forms of mixed degree");
        let mut out = self.clone().with_trunc(trunc_min(self.trunc, other.trunc));
        for ((m, s), c) in other.terms.iter() {
            out.add_term(*m, *s, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DiffForm) -> Result<DiffForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffForm {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> DiffForm {
        let mut out = DiffForm::zero(self.vars, self.degree).with_trunc(self.trunc);
        if s.is_zero() {
            return out;
        }
        for ((m, mask), c) in self.terms.iter() {
            out.terms.insert((*m, *mask), c * s);
        }
        out
    }

    pub fn mul_poly(&self, p: &PolySeries) -> Result<DiffForm> {
        if self.vars != p.vars {
            return Err(Error::VarSetMismatch(
                self.vars.name().into(),
                p.vars.name().into(),
            ));
        }
        let mut out =
            DiffForm::zero(self.vars, self.degree).with_trunc(trunc_min(self.trunc, p.trunc));
        for ((m, mask), c) in self.terms.iter() {
            for (pm, pc) in p.terms() {
                out.add_term(m.mul(pm), *mask, c * pc);
            }
        }
        Ok(out)
    }

    pub fn into_varset(&self, vars: VarSet) -> DiffForm {
        let mut out = DiffForm::zero(vars, self.degree).with_trunc(self.trunc);
        assert_eq!(self.vars.mask() & !vars.mask(), 0);
        for ((m, mask), c) in self.terms.iter() {
            out.add_term(*m, *mask, c.clone());
        }
        out
    }

    /// Split into (form degree, coefficient degree)-homogeneous pieces.
    pub fn split_by_poly_degree(&self) -> BTreeMap<u32, DiffForm> {
        let mut out: BTreeMap<u32, DiffForm> = BTreeMap::new();
        for ((m, mask), c) in self.terms.iter() {
            let piece = out
                .entry(m.total_degree())
                .or_insert_with(|| DiffForm::zero(self.vars, self.degree).with_trunc(self.trunc));
            piece.add_term(*m, *mask, c.clone());
        }
        out
    }
}

/// Exterior derivative. The certified series truncation drops by one.
pub fn form_d(omega: &DiffForm) -> DiffForm {
    let mut out =
        DiffForm::zero(omega.vars, omega.degree + 1).with_trunc(trunc_sub(omega.trunc, 1));
    for ((m, mask), c) in omega.terms.iter() {
        for v in omega.vars.vars() {
            let e = m.exp(*v);
            if e == 0 {
                continue;
            }
            let vbit = 1u8 << v.slot();
            let sign = slot_wedge_sign(vbit, *mask);
            if sign == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.exps[v.slot()] = e - 1;
            let coeff = c.scale_int(sign as i64 * e as i64);
            out.add_term(m2, vbit | mask, coeff);
        }
    }
    out
}

/// Graded-commutative wedge product.
pub fn form_wedge(a: &DiffForm, b: &DiffForm) -> Result<DiffForm> {
    a.check_compat(b)?;
    let mut out = DiffForm::zero(a.vars, a.degree + b.degree)
        .with_trunc(trunc_min(a.trunc, b.trunc));
    for ((ma, maska), ca) in a.terms.iter() {
        for ((mb, maskb), cb) in b.terms.iter() {
            let sign = slot_wedge_sign(*maska, *maskb);
            if sign == 0 {
                continue;
            }
            let mut c = ca * cb;
            if sign < 0 {
                c = -c;
            }
            out.add_term(ma.mul(mb), maska | maskb, c);
        }
    }
    Ok(out)
}

/// Interior product i_X(omega), degree k-1.
pub fn form_contract(x: &VectorField, omega: &DiffForm) -> Result<DiffForm> {
    if omega.degree == 0 {
        return Err(Error::ContractZeroForm);
    }
    omega_contract_unchecked(x, omega)
}

fn omega_contract_unchecked(x: &VectorField, omega: &DiffForm) -> Result<DiffForm> {
    if x.vars != omega.vars {
        return Err(Error::VarSetMismatch(
            x.vars.name().into(),
            omega.vars.name().into(),
        ));
    }
    let mut out = DiffForm::zero(omega.vars, omega.degree.saturating_sub(1))
        .with_trunc(trunc_min(x.trunc(), omega.trunc));
    for ((m, mask), c) in omega.terms.iter() {
        for (v, xv) in x.components.iter() {
            let vbit = 1u8 << v.slot();
            if mask & vbit == 0 {
                continue;
            }
            let below = (mask & (vbit - 1)).count_ones();
            let sign = if below % 2 == 0 { 1i64 } else { -1 };
            for (xm, xc) in xv.terms() {
                out.add_term(m.mul(xm), mask & !vbit, (c * xc).scale_int(sign));
            }
        }
    }
    Ok(out)
}

/// Lie derivative via the Cartan formula L_X = d i_X + i_X d.
pub fn form_lie(x: &VectorField, omega: &DiffForm) -> Result<DiffForm> {
    let term2 = omega_contract_unchecked(x, &form_d(omega))?;
    if omega.degree == 0 {
        return Ok(term2);
    }
    form_d(&form_contract(x, omega)?).add(&term2)
}

/// Divergence sum_v dX_v/dv.
pub fn vf_div(x: &VectorField) -> PolySeries {
    let mut out = PolySeries::zero(x.vars).with_trunc(trunc_sub(x.trunc(), 1));
    for (v, f) in x.components.iter() {
        out = out
            .checked_add(&f.partial(*v).expect("component variable in set"))
            .expect("same variable set");
    }
    out
}

/// The lambda-twisted action X(omega) = L_X omega + lambda div(X) omega.
pub fn lambda_action(x: &VectorField, omega: &DiffForm, lambda: &Scalar) -> Result<DiffForm> {
    let lie = form_lie(x, omega)?;
    if lambda.is_zero() {
        return Ok(lie);
    }
    lie.add(&omega.mul_poly(&vf_div(x).scale(lambda))?)
}

/// The homotopy operator: int(omega) = i_E(omega)/(k+m) on each
/// (form degree k, coefficient degree m)-homogeneous piece.
pub fn int_op(omega: &DiffForm) -> Result<DiffForm> {
    let k = omega.degree as i64;
    let mut out = DiffForm::zero(omega.vars, omega.degree.saturating_sub(1))
        .with_trunc(omega.trunc);
    for (m_deg, piece) in omega.split_by_poly_degree() {
        if k == 0 && m_deg == 0 {
            return Err(Error::EulerWeightZero);
        }
        if piece.degree == 0 {
            // i_E kills 0-forms.
            continue;
        }
        let euler = VectorField::euler(omega.vars);
        let contracted = form_contract(&euler, &piece)?;
        let scaled = contracted.scale(&Scalar::ratio(1, k + m_deg as i64));
        for ((m, mask), c) in scaled.terms.iter() {
            out.add_term(*m, *mask, c.clone());
        }
    }
    Ok(out)
}

/// The unique X with i_X(vol) = omega, for omega of degree n-1 in n
/// variables, vol the ascending volume form.
pub fn vf_from_form(omega: &DiffForm, vars: VarSet) -> Result<VectorField> {
    assert_eq!(omega.vars, vars);
    let n = vars.vars().len() as u8;
    if omega.degree != n - 1 {
        return Err(Error::WrongFormDegree {
            expected: n - 1,
            got: omega.degree,
        });
    }
    let vol = vars.mask();
    let mut comps: BTreeMap<Var, PolySeries> = BTreeMap::new();
    for ((m, mask), c) in omega.terms.iter() {
        let missing = vol & !mask;
        debug_assert_eq!(missing.count_ones(), 1);
        let slot = missing.trailing_zeros() as usize;
        let v = Var::from_slot(slot);
        let below = (vol & (missing - 1)).count_ones();
        let sign = if below % 2 == 0 { 1i64 } else { -1 };
        let p = comps
            .entry(v)
            .or_insert_with(|| PolySeries::zero(vars).with_trunc(omega.trunc));
        p.add_term(*m, c.scale_int(sign));
    }
    let mut out = VectorField::zero(vars);
    for (v, p) in comps {
        if !p.is_zero() {
            out.components.insert(v, p);
        }
    }
    Ok(out)
}

pub fn fmt_wedge_mask(mask: u8) -> String {
    if mask == 0 {
        return String::new();
    }
    let has_t = mask & 1 != 0;
    let xs: Vec<u8> = (1..6).filter(|&s| mask & (1 << s) != 0).collect();
    let mut parts = Vec::new();
    if has_t {
        parts.push("dt".to_string());
    }
    match xs.len() {
        0 => {}
        1 => parts.push(format!("dx{}", xs[0])),
        _ => parts.push(format!(
            "d{}",
            xs.iter().map(|x| x.to_string()).collect::<String>()
        )),
    }
    parts.join("*")
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m, mask), c)| {
                let mut factors = Vec::new();
                let mono = m.to_string();
                if !mono.is_empty() {
                    factors.push(mono);
                }
                let w = fmt_wedge_mask(*mask);
                if !w.is_empty() {
                    factors.push(w);
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

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (v, p) in self.components.iter() {
            let dname = match v {
                Var::T => "Dt".to_string(),
                Var::X(i) => format!("D{i}"),
            };
            for (m, c) in p.terms() {
                let mono = m.to_string();
                let body = if mono.is_empty() {
                    dname.clone()
                } else {
                    format!("{mono}*{dname}")
                };
                let prefix = coeff_string(c, false);
                parts.push(if prefix.is_empty() {
                    body
                } else {
                    format!("{prefix}*{body}")
                });
            }
        }
        write!(f, "{}", join_signed(&parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u8) -> Var {
        Var::X(i)
    }

    fn poly_mono(vars: VarSet, exps: &[(Var, u16)]) -> PolySeries {
        let mut m = EvenMono::unit();
        for &(v, e) in exps {
            m.exps[v.slot()] += e;
        }
        PolySeries::monomial(vars, m, Scalar::one())
    }

    fn dform(vars: VarSet, exps: &[(Var, u16)], wedge: &[Var]) -> DiffForm {
        let mut m = EvenMono::unit();
        for &(v, e) in exps {
            m.exps[v.slot()] += e;
        }
        let mask = wedge.iter().fold(0u8, |acc, v| acc | (1 << v.slot()));
        DiffForm::monomial(vars, m, mask, Scalar::one())
    }

    #[test]
    fn d_basics() {
        // d(x1 dx2) = d12
        let f = dform(VarSet::X15, &[(x(1), 1)], &[x(2)]);
        assert_eq!(form_d(&f), dform(VarSet::X15, &[], &[x(1), x(2)]));
        // d^2 = 0
        assert!(form_d(&form_d(&f)).is_zero());
        let d12 = dform(VarSet::X15, &[], &[x(1), x(2)]);
        assert!(form_d(&d12).is_zero());
    }

    #[test]
    fn d_of_quadratic_term() {
        // d(x1^2 x2 x3 d1) = -x1^2 (x2 d13 + x3 d12): the psi item-3 shape.
        let f = dform(VarSet::X15, &[(x(1), 2), (x(2), 1), (x(3), 1)], &[x(1)]);
        let d = form_d(&f);
        let expected = dform(VarSet::X15, &[(x(1), 2), (x(2), 1)], &[x(1), x(3)])
            .add(&dform(VarSet::X15, &[(x(1), 2), (x(3), 1)], &[x(1), x(2)]))
            .unwrap()
            .neg();
        assert_eq!(d, expected);
    }

    #[test]
    fn wedge_examples() {
        let dx2 = DiffForm::dx(VarSet::X15, x(2));
        let dx3 = DiffForm::dx(VarSet::X15, x(3));
        assert_eq!(
            form_wedge(&dx2, &dx3).unwrap(),
            dform(VarSet::X15, &[], &[x(2), x(3)])
        );
        let d23 = dform(VarSet::X15, &[], &[x(2), x(3)]);
        let d45 = dform(VarSet::X15, &[], &[x(4), x(5)]);
        assert_eq!(
            form_wedge(&d23, &d45).unwrap(),
            dform(VarSet::X15, &[], &[x(2), x(3), x(4), x(5)])
        );
        let d24 = dform(VarSet::X15, &[], &[x(2), x(4)]);
        assert!(form_wedge(&d23, &d24).unwrap().is_zero());
    }

    #[test]
    fn contraction_examples() {
        let d23 = dform(VarSet::X15, &[], &[x(2), x(3)]);
        let i = form_contract(&VectorField::unit(VarSet::X15, x(2)), &d23).unwrap();
        assert_eq!(i, DiffForm::dx(VarSet::X15, x(3)));

        // i_{x2 D3}(d23) = -x2 dx2
        let x2d3 = VectorField::from_component(
            VarSet::X15,
            x(3),
            PolySeries::var(VarSet::X15, x(2)),
        );
        let i = form_contract(&x2d3, &d23).unwrap();
        assert_eq!(i, DiffForm::poly_wedge(&PolySeries::var(VarSet::X15, x(2)), 1 << x(2).slot()).neg());

        // Contracting a 0-form is an error.
        let f0 = DiffForm::from_poly(&PolySeries::one(VarSet::X15));
        assert!(form_contract(&x2d3, &f0).is_err());
    }

    #[test]
    fn contraction_of_exact_form_display() {
        // With f = x2*x5^2, omega = d(f dx3): i_{x5 D2}(omega) = x5 d2(f) dx3.
        let vars = VarSet::X25;
        let f = poly_mono(vars, &[(x(2), 1), (x(5), 2)]);
        let omega = form_d(&DiffForm::poly_wedge(&f, 1 << x(3).slot()));
        let xk_dh = VectorField::from_component(vars, x(2), PolySeries::var(vars, x(5)));
        let lhs = form_contract(&xk_dh, &omega).unwrap();
        let g = PolySeries::var(vars, x(5))
            .checked_mul(&f.partial(x(2)).unwrap())
            .unwrap();
        assert_eq!(lhs, DiffForm::poly_wedge(&g, 1 << x(3).slot()));
    }

    #[test]
    fn lie_examples() {
        // L_{D1}(x1 d23) = d23
        let omega = dform(VarSet::X15, &[(x(1), 1)], &[x(2), x(3)]);
        let lie = form_lie(&VectorField::unit(VarSet::X15, x(1)), &omega).unwrap();
        assert_eq!(lie, dform(VarSet::X15, &[], &[x(2), x(3)]));

        // L_E(omega) = (k+m) omega for homogeneous coefficients.
        let omega = dform(VarSet::X15, &[(x(2), 1), (x(4), 2)], &[x(1), x(5)]);
        let lie = form_lie(&VectorField::euler(VarSet::X15), &omega).unwrap();
        assert_eq!(lie, omega.scale(&Scalar::from_int(5)));

        // L_{x2 D3}(dx2) = 0: both Cartan terms vanish.
        let x2d3 = VectorField::from_component(
            VarSet::X15,
            x(3),
            PolySeries::var(VarSet::X15, x(2)),
        );
        assert!(form_lie(&x2d3, &DiffForm::dx(VarSet::X15, x(2))).unwrap().is_zero());
    }

    #[test]
    fn divergence_examples() {
        assert!(vf_div(&VectorField::unit(VarSet::X15, x(1))).is_zero());
        let x2d2 = VectorField::from_component(
            VarSet::X15,
            x(2),
            PolySeries::var(VarSet::X15, x(2)),
        );
        assert_eq!(vf_div(&x2d2), PolySeries::one(VarSet::X15));
        let x3d3 = VectorField::from_component(
            VarSet::X15,
            x(3),
            PolySeries::var(VarSet::X15, x(3)),
        );
        assert!(vf_div(&x2d2.add(&x3d3.neg()).unwrap()).is_zero());
    }

    #[test]
    fn lambda_action_on_w1() {
        // f Dt acting on g dt at lambda = -1/2 gives (f g' + f' g / 2) dt,
        // and at lambda = -3/2 gives (f g' - f' g / 2) dt. Take f = t^2, g = t.
        let f = PolySeries::var_pow(VarSet::T, Var::T, 2);
        let g = PolySeries::var(VarSet::T, Var::T);
        let xf = VectorField::from_component(VarSet::T, Var::T, f.clone());
        let omega = DiffForm::poly_wedge(&g, 1);
        for (lam, half_sign) in [(Scalar::ratio(-1, 2), 1i64), (Scalar::ratio(-3, 2), -1i64)] {
            let got = lambda_action(&xf, &omega, &lam).unwrap();
            let fgp = f.checked_mul(&g.partial(Var::T).unwrap()).unwrap();
            let fpg = f
                .partial(Var::T)
                .unwrap()
                .checked_mul(&g)
                .unwrap()
                .scale(&Scalar::ratio(half_sign, 2));
            let expected = DiffForm::poly_wedge(&fgp.checked_add(&fpg).unwrap(), 1);
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn int_op_examples() {
        // int(dx2) = x2 (k=1, m=0)
        let i = int_op(&DiffForm::dx(VarSet::X25, x(2))).unwrap();
        assert_eq!(i, DiffForm::from_poly(&PolySeries::var(VarSet::X25, x(2))));

        // int(x2 dx3) = x2 x3 / 2
        let omega = dform(VarSet::X25, &[(x(2), 1)], &[x(3)]);
        let i = int_op(&omega).unwrap();
        let expected =
            DiffForm::from_poly(&poly_mono(VarSet::X25, &[(x(2), 1), (x(3), 1)]))
                .scale(&Scalar::ratio(1, 2));
        assert_eq!(i, expected);

        // int of a nonzero constant 0-form has Euler weight zero.
        let f0 = DiffForm::from_poly(&PolySeries::one(VarSet::X25));
        assert!(matches!(int_op(&f0), Err(Error::EulerWeightZero)));
    }

    #[test]
    fn vf_from_form_examples() {
        // 4 variables x2..x5: d345 corresponds to D2.
        let d345 = dform(VarSet::X25, &[], &[x(3), x(4), x(5)]);
        assert_eq!(
            vf_from_form(&d345, VarSet::X25).unwrap(),
            VectorField::unit(VarSet::X25, x(2))
        );

        // (x_k d_h + x_h d_k) wedge d_ij -> x_h D_h - x_k D_k for
        // (i,j,h,k) = (2,3,4,5).
        let dp = DiffForm::poly_wedge(&PolySeries::var(VarSet::X25, x(5)), 1 << x(4).slot())
            .add(&DiffForm::poly_wedge(
                &PolySeries::var(VarSet::X25, x(4)),
                1 << x(5).slot(),
            ))
            .unwrap();
        let d23 = dform(VarSet::X25, &[], &[x(2), x(3)]);
        let w = form_wedge(&dp, &d23).unwrap();
        let got = vf_from_form(&w, VarSet::X25).unwrap();
        let expected = VectorField::from_component(
            VarSet::X25,
            x(4),
            PolySeries::var(VarSet::X25, x(4)),
        )
        .add(
            &VectorField::from_component(
                VarSet::X25,
                x(5),
                PolySeries::var(VarSet::X25, x(5)),
            )
            .neg(),
        )
        .unwrap();
        assert_eq!(got, expected);

        // 5 variables t,x2..x5: c*d2345 corresponds to c*Dt.
        let c = Scalar::ratio(3, 7);
        let w5 = dform(VarSet::TX25, &[], &[x(2), x(3), x(4), x(5)]).scale(&c);
        assert_eq!(
            vf_from_form(&w5, VarSet::TX25).unwrap(),
            VectorField::unit(VarSet::TX25, Var::T).scale(&c)
        );

        // Wrong degree errors.
        let d23 = dform(VarSet::X25, &[], &[x(2), x(3)]);
        assert!(vf_from_form(&d23, VarSet::X25).is_err());
    }

    #[test]
    fn vf_from_form_inverts_contraction() {
        // X -> i_X(vol) -> vf_from_form is the identity.
        let vars = VarSet::X25;
        let mut xfield = VectorField::zero(vars);
        for (i, v) in [x(2), x(3), x(4), x(5)].iter().enumerate() {
            let p = poly_mono(vars, &[(x(2 + ((i as u8 + 1) % 4)), 1)]);
            xfield = xfield
                .add(&VectorField::from_component(vars, *v, p))
                .unwrap();
        }
        let omega = form_contract(&xfield, &DiffForm::volume(vars)).unwrap();
        assert_eq!(vf_from_form(&omega, vars).unwrap(), xfield);
    }

    #[test]
    fn display_shapes() {
        let d12 = dform(VarSet::X15, &[], &[x(1), x(2)]);
        assert_eq!(d12.to_string(), "d12");
        assert_eq!(DiffForm::dx(VarSet::X15, x(3)).to_string(), "dx3");
        assert_eq!(VectorField::unit(VarSet::X15, x(5)).to_string(), "D5");
        let tdt = dform(VarSet::TX25, &[], &[Var::T, x(2)]);
        assert_eq!(tdt.to_string(), "dt*dx2");
    }
}
