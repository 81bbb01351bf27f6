//! The two embeddings of E(1,6): psi into the degree-zero subalgebra of
//! E(5,10) under the (0,1,1,1,1) grading, and Psi into E(4,4) through the
//! iota image in K(1,6).
//!
//! psi is given by four closed formulas. Psi is pinned on the spanning set
//! iota(t^n xi_I) with |I| <= 3: the base values are the assignment table
//! below, the t-power rule is Psi(iota(t^n xi_I)) = 2^n x1^n
//! Psi(iota(xi_I)), and for |I| > 3 the relation iota(x) = iota(A x)
//! reduces to the base range. Well-definedness is exactly the statement
//! that every kernel relation of the spanning set maps to zero, and is
//! checked when the spanning basis is built.

use std::collections::BTreeMap;

use crate::e16k16::{bracket_iota_image, op_a, op_iota, E16Elt, K16Elt};
use crate::error::{Error, Result};
use crate::formcalc::{form_d, DiffForm, VectorField};
use crate::grassmann::{seq_sort_sign, Coord};
use crate::linalg::{Matrix, SpanBuilder};
use crate::scalar::Scalar;
use crate::series::{trunc_sub, EvenMono, PolySeries, Var, VarSet};
use crate::verify::{Checker, VerifyReport};
use crate::vfalgebras::{degree_510, Degree, E44Elt, E510Elt, GradingType510};

const X15: VarSet = VarSet::X15;
const X14: VarSet = VarSet::X14;
const X25: VarSet = VarSet::X25;

fn x1_pow(n: u32) -> PolySeries {
    PolySeries::var_pow(X15, Var::X(1), n as u16)
}

// ---------------------------------------------------------------------------
// psi: E(1,6) -> g_0 of E(5,10)
// ---------------------------------------------------------------------------

/// The embedding psi, defined summand by summand:
///  (1) f(t) Dt          -> f(x1) D1 - (1/4) f'(x1) (x2 D2 + ... + x5 D5)
///  (2) X (x) f(t)       -> f(x1) X
///  (3) x_i x_j (x) f dt -> f(x1) (x_i d_1j + x_j d_1i)
///  (4) d_ij (x) f dt    -> f(x1) d_ij + (1/2) f'(x1) (x_i d_1j - x_j d_1i)
pub fn psi(a: &E16Elt) -> Result<E510Elt> {
    let trunc = trunc_sub(a.trunc, 1);
    let mut even = VectorField::zero(X15);
    let mut odd = DiffForm::zero(X15, 2).with_trunc(trunc);

    for (n, c) in a.w1_terms() {
        even = even.add(&VectorField::from_component(
            X15,
            Var::X(1),
            x1_pow(*n).scale(c),
        ))?;
        if *n > 0 {
            let coeff = c.scale_int(-(*n as i64)) * Scalar::ratio(1, 4);
            for k in 2..=5u8 {
                let mut m = EvenMono::var_pow(Var::X(1), (*n - 1) as u16);
                m.exps[k as usize] += 1;
                even = even.add(&VectorField::from_component(
                    X15,
                    Var::X(k),
                    PolySeries::monomial(X15, m, coeff.clone()),
                ))?;
            }
        }
    }

    for ((u, v, n), c) in a.sl4_terms() {
        let mut m = EvenMono::var_pow(Var::X(1), *n as u16);
        m.exps[*u as usize] += 1;
        even = even.add(&VectorField::from_component(
            X15,
            Var::X(*v),
            PolySeries::monomial(X15, m, c.clone()),
        ))?;
    }

    for ((u, v, n), c) in a.s2_terms() {
        // f(x1)(x_u d_1v + x_v d_1u); for u = v both terms coincide.
        for (p, q) in [(*u, *v), (*v, *u)] {
            let mut m = EvenMono::var_pow(Var::X(1), *n as u16);
            m.exps[p as usize] += 1;
            odd.add_term(m, (1 << 1) | (1 << q), c.clone());
        }
    }

    for ((u, v, n), c) in a.lam2_terms() {
        let m = EvenMono::var_pow(Var::X(1), *n as u16);
        odd.add_term(m, (1 << *u) | (1 << *v), c.clone());
        if *n > 0 {
            let half_n = c.scale_int(*n as i64) * Scalar::ratio(1, 2);
            for (p, q, s) in [(*u, *v, 1i64), (*v, *u, -1i64)] {
                let mut m = EvenMono::var_pow(Var::X(1), (*n - 1) as u16);
                m.exps[p as usize] += 1;
                odd.add_term(m, (1 << 1) | (1 << q), half_n.scale_int(s));
            }
        }
    }

    E510Elt::new(even, odd)
}

/// psi(2t Dt), the grading element of the embedded copy.
pub fn psi_z() -> E510Elt {
    let mut z = E16Elt::zero();
    z.add_w1(1, Scalar::from_int(2));
    psi(&z).expect("z is a valid element")
}

/// Inverse of psi on g_0: splits off the W1 part through the x1-only
/// D1-coefficient, then reads the sl4, s2 and lam2 coordinates from what
/// remains. Inputs outside g_0 produce an error naming the first
/// offending monomial.
pub fn psi_inverse(b: &E510Elt) -> Result<E16Elt> {
    let mut out = E16Elt::zero().with_trunc(b.trunc());

    // Even part. The D1 component must involve only x1.
    let f1 = b.even().component(Var::X(1));
    for (m, _) in f1.terms() {
        if m.total_degree() != m.exp(Var::X(1)) as u32 {
            return Err(Error::NotInG0(format!("{m}*D1")));
        }
    }
    for (m, c) in f1.terms() {
        out.add_w1(m.exp(Var::X(1)) as u32, c.clone());
    }
    let w1_image = psi(&out.even_part())?;
    let remainder = b.even().add(&w1_image.even().neg())?;
    for (v, p) in remainder.components() {
        let Var::X(v) = v else { unreachable!() };
        if *v == 1 {
            return Err(Error::NotInG0(format!("{p}*D1")));
        }
        for (m, c) in p.terms() {
            // Must be x1^a x_u with u in 2..=5.
            let a = m.exp(Var::X(1)) as u32;
            let rest: Vec<u8> = (2..=5u8)
                .flat_map(|u| std::iter::repeat(u).take(m.exp(Var::X(u)) as usize))
                .collect();
            if rest.len() != 1 || m.total_degree() != a + 1 {
                return Err(Error::NotInG0(format!("{m}*D{v}")));
            }
            out.add_sl4(rest[0], *v, a, c.clone());
        }
    }

    // Odd part: first the lam2 coordinates (d_uv with u,v >= 2 and pure
    // x1-power coefficients), then what remains must be the s2 shape.
    for ((m, mask), c) in b.odd().terms() {
        if mask & 0b10 != 0 {
            continue;
        }
        if m.total_degree() != m.exp(Var::X(1)) as u32 {
            return Err(Error::NotInG0(format!(
                "{}",
                DiffForm::monomial(X15, *m, *mask, c.clone())
            )));
        }
        let mut it = (2..=5u8).filter(|u| mask & (1 << u) != 0);
        let (u, v) = (it.next().unwrap(), it.next().unwrap());
        out.add_lam2(u, v, m.exp(Var::X(1)) as u32, c.clone());
    }
    let mut lam2_part = E16Elt::zero();
    for ((u, v, a), c) in out.lam2_terms() {
        lam2_part.add_lam2(*u, *v, *a, c.clone());
    }
    let rem = b.odd().sub(psi(&lam2_part)?.odd())?;
    // rem = sum c x1^a x_u d_1v with symmetric (u,v) coefficients.
    let mut sym: BTreeMap<(u8, u8, u32), Scalar> = BTreeMap::new();
    for ((m, mask), c) in rem.terms() {
        if mask & 0b10 == 0 {
            return Err(Error::NotInG0(format!(
                "{}",
                DiffForm::monomial(X15, *m, *mask, c.clone())
            )));
        }
        let v = (2..=5u8)
            .find(|u| mask & (1 << u) != 0)
            .ok_or_else(|| Error::NotInG0(format!("{m} with wedge d1? only")))?;
        let a = m.exp(Var::X(1)) as u32;
        let rest: Vec<u8> = (2..=5u8)
            .flat_map(|u| std::iter::repeat(u).take(m.exp(Var::X(u)) as usize))
            .collect();
        if rest.len() != 1 || m.total_degree() != a + 1 {
            return Err(Error::NotInG0(format!(
                "{}",
                DiffForm::monomial(X15, *m, *mask, c.clone())
            )));
        }
        sym.insert((rest[0], v, a), c.clone());
    }
    let mut seen: BTreeMap<(u8, u8, u32), bool> = BTreeMap::new();
    for ((u, v, a), c) in sym.iter() {
        if seen.contains_key(&(*u, *v, *a)) {
            continue;
        }
        seen.insert((*u, *v, *a), true);
        if u == v {
            out.add_s2(*u, *u, *a, c * &Scalar::ratio(1, 2));
            continue;
        }
        seen.insert((*v, *u, *a), true);
        let mirror = sym.get(&(*v, *u, *a)).cloned().unwrap_or_else(Scalar::zero);
        if mirror != *c {
            return Err(Error::NotInG0(format!(
                "asymmetric x{u} d1{v} coefficient"
            )));
        }
        out.add_s2(*u, *v, *a, c.clone());
    }

    // Round trip must close exactly; anything else is a shape violation.
    if psi(&out)?.sub(b)?.is_zero() {
        Ok(out)
    } else {
        Err(Error::NotInG0("psi round trip mismatch".into()))
    }
}

/// Basis of E(1,6) with t-degree at most `twindow`, labeled.
pub fn e16_basis(twindow: u32) -> Vec<(String, E16Elt)> {
    let mut out = Vec::new();
    for a in 0..=twindow {
        let tp = |s: &str| {
            if a == 0 {
                s.to_string()
            } else {
                format!("t^{a}*{s}")
            }
        };
        let mut w1 = E16Elt::zero();
        w1.add_w1(a, Scalar::one());
        out.push((tp("Dt"), w1));
        for u in 2..=5u8 {
            for v in 2..=5u8 {
                if u == v {
                    continue;
                }
                let mut e = E16Elt::zero();
                e.add_sl4(u, v, a, Scalar::one());
                out.push((tp(&format!("x{u}*D{v}")), e));
            }
        }
        for u in 2..=4u8 {
            let mut e = E16Elt::zero();
            e.add_sl4(u, u, a, Scalar::one());
            e.add_sl4(u + 1, u + 1, a, Scalar::from_int(-1));
            out.push((tp(&format!("(x{u}*D{u}-x{}*D{})", u + 1, u + 1)), e));
        }
        for u in 2..=5u8 {
            for v in u..=5u8 {
                let mut e = E16Elt::zero();
                e.add_s2(u, v, a, Scalar::one());
                out.push((tp(&format!("x{u}*x{v}*dt")), e));
            }
        }
        for u in 2..=5u8 {
            for v in (u + 1)..=5u8 {
                let mut e = E16Elt::zero();
                e.add_lam2(u, v, a, Scalar::one());
                out.push((tp(&format!("d{u}{v}*dt")), e));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Psi: E(1,6) = im(iota) -> E(4,4)
// ---------------------------------------------------------------------------

/// Cyclic successors inside {2,3,4}: cyc(i) = (j,k) with (i,j,k) cyclic.
fn cyc(i: u8) -> (u8, u8) {
    match i {
        2 => (3, 4),
        3 => (4, 2),
        4 => (2, 3),
        _ => unreachable!(),
    }
}

fn e44_d1() -> E44Elt {
    E44Elt::from_even(VectorField::unit(X14, Var::X(1)))
}

fn e44_dk(k: u8) -> E44Elt {
    E44Elt::from_even(VectorField::unit(X14, Var::X(k)))
}

fn e44_x_d(u: u8, v: u8) -> E44Elt {
    E44Elt::from_even(VectorField::from_component(
        X14,
        Var::X(v),
        PolySeries::var(X14, Var::X(u)),
    ))
}

/// x_k (x2 D2 + x3 D3 + x4 D4)
fn e44_xk_euler(k: u8) -> E44Elt {
    let mut f = VectorField::zero(X14);
    for v in 2..=4u8 {
        let mut m = EvenMono::var(Var::X(k));
        m.exps[v as usize] += 1;
        f = f
            .add(&VectorField::from_component(
                X14,
                Var::X(v),
                PolySeries::monomial(X14, m, Scalar::one()),
            ))
            .expect("same varset");
    }
    E44Elt::from_even(f)
}

/// c * x^mono dx_v
fn e44_form(mono: EvenMono, v: u8, c: Scalar) -> E44Elt {
    E44Elt::from_odd(DiffForm::monomial(X14, mono, 1 << v, c)).expect("degree 1")
}

/// The base assignment Psi(iota(xi_I)) for a sorted xi/eta monomial with
/// |I| <= 3 (zero on the two families with iota = 0). Bits 0..2 are
/// xi2..xi4 and bits 3..5 are eta2..eta4.
pub fn psi44_base_image(mask: u8) -> E44Elt {
    debug_assert!(mask.count_ones() <= 3);
    let half_sqrt2 = &Scalar::ratio(1, 2) * &Scalar::sqrt2();
    let sqrt2 = Scalar::sqrt2();
    let xis: Vec<u8> = (0..3u8).filter(|b| mask & (1 << b) != 0).map(|b| b + 2).collect();
    let etas: Vec<u8> = (3..6u8).filter(|b| mask & (1 << b) != 0).map(|b| b - 1).collect();
    match (xis.as_slice(), etas.as_slice()) {
        ([], []) => e44_d1(),
        // eta_i -> (sqrt2/2) dx_i
        ([], [i]) => e44_form(EvenMono::unit(), *i, half_sqrt2),
        // xi_i -> (sqrt2/2)(x_k dx_j - x_j dx_k), (i,j,k) cyclic
        ([i], []) => {
            let (j, k) = cyc(*i);
            e44_form(EvenMono::var(Var::X(k)), j, half_sqrt2.clone())
                .sub(&e44_form(EvenMono::var(Var::X(j)), k, half_sqrt2))
                .expect("same shape")
        }
        // eta_a eta_b (a < b) -> +-D_k, k the third index, sign by whether
        // (a,b) is a cyclic pair
        ([], [a, b]) => {
            let k = 9 - a - b;
            if cyc(*a).0 == *b {
                e44_dk(k)
            } else {
                e44_dk(k).neg()
            }
        }
        // xi_a xi_b (a < b) -> +-x_k Euler, same orientation rule
        ([a, b], []) => {
            let k = 9 - a - b;
            if cyc(*a).0 == *b {
                e44_xk_euler(k)
            } else {
                e44_xk_euler(k).neg()
            }
        }
        // xi_a eta_b: x_b D_a off the diagonal, -x_j D_j - x_k D_k on it
        ([a], [b]) => {
            if a != b {
                e44_x_d(*b, *a)
            } else {
                let (j, k) = cyc(*a);
                e44_x_d(j, j).add(&e44_x_d(k, k)).expect("same shape").neg()
            }
        }
        // eta2 eta3 eta4 -> -sqrt2 dx1
        ([], [2, 3, 4]) => e44_form(EvenMono::unit(), 1, -sqrt2),
        // xi2 xi3 xi4 -> 0 (iota vanishes)
        ([2, 3, 4], []) => E44Elt::zero(),
        // xi_a, eta_b eta_c (b < c)
        ([a], [b, c]) => {
            if a != b && a != c {
                // xi_i eta_j eta_k: iota vanishes.
                E44Elt::zero()
            } else if a == b {
                // xi_a eta_a eta_c: shape xi_j eta_j eta_i with (j,i)=(a,c):
                // value sqrt2 x_i dx1.
                e44_form(EvenMono::var(Var::X(*c)), 1, sqrt2)
            } else {
                // a == c: xi_a eta_b eta_a = -(xi_a eta_a eta_b):
                // value -sqrt2 x_b dx1.
                e44_form(EvenMono::var(Var::X(*b)), 1, -sqrt2)
            }
        }
        // xi_a xi_b (a < b), eta_c
        ([a, b], [c]) => {
            if *c != *a && *c != *b {
                // xi_i xi_j eta_k -> -sqrt2 x_k^2 dx1, cyclic orientation.
                let (j, _) = cyc(*a);
                let sign = if j == *b { 1 } else { -1 };
                e44_form(
                    EvenMono::var_pow(Var::X(*c), 2),
                    1,
                    sqrt2.scale_int(-sign),
                )
            } else {
                // Shape xi_j xi_i eta_i: value s(j,i) sqrt2 x_i x_k dx1 with
                // s(j,i) = +1 when (i,j) is a cyclic pair, and the sorted
                // monomial xi_a xi_b eta_a flips one sign.
                let (j, i, flip) = if c == b { (*a, *b, 1i64) } else { (*b, *a, -1i64) };
                let k = 9 - i - j; // the third index in {2,3,4}
                let s = if cyc(i).0 == j { 1i64 } else { -1 };
                let mut m = EvenMono::var(Var::X(i));
                m.exps[k as usize] += 1;
                e44_form(m, 1, sqrt2.scale_int(s * flip))
            }
        }
        _ => unreachable!("|I| <= 3"),
    }
}

/// Psi(iota(t^n xi_I)) for a single monomial, any |I|: the 2^n x1^n rule
/// on the base table, with |I| > 3 reduced through iota(x) = iota(A x).
pub fn psi44_of_iota_monomial(n: u32, mask: u8) -> E44Elt {
    if mask.count_ones() <= 3 {
        let base = psi44_base_image(mask);
        if n == 0 {
            return base;
        }
        let p = PolySeries::var_pow(X14, Var::X(1), n as u16).scale(&Scalar::from_int(1 << n));
        return base.mul_poly(&p).expect("same varset");
    }
    // A(t^n xi_I) is a single monomial c * t^n' xi_I# with |I#| <= 2.
    let a = op_a(&K16Elt::monomial(Coord::XiEta, n, mask, Scalar::one())).expect("exact element");
    let mut out = E44Elt::zero();
    for ((n2, m2), c) in a.terms() {
        out = out
            .add(&psi44_of_iota_monomial(*n2, *m2).scale(c))
            .expect("same shape");
    }
    out
}

/// Psi applied to a sum of iota values presented as iota(h): pushes the
/// table through h monomial by monomial.
pub fn psi44_of_iota(h: &K16Elt) -> E44Elt {
    let h = h.change_coords(Coord::XiEta);
    let mut out = E44Elt::zero();
    for ((n, m), c) in h.terms() {
        out = out
            .add(&psi44_of_iota_monomial(*n, *m).scale(c))
            .expect("same shape");
    }
    out
}

/// The spanning set {iota(t^n xi_I) : |I| <= 3, n <= window} with a
/// reduced basis, change-of-basis data, and its kernel relations.
pub struct IotaBasis {
    pub window: u32,
    /// (n, mask) labels of the spanning elements, |mask| <= 3.
    pub entries: Vec<(u32, u8)>,
    pub elements: Vec<K16Elt>,
    pub basis_indices: Vec<usize>,
    /// Kernel relations: coefficient vectors over `entries`.
    pub kernel: Vec<Vec<Scalar>>,
    span: SpanBuilder<(u32, u8)>,
}

pub fn masks_of_popcount_at_most(k: u32) -> Vec<u8> {
    (0u8..64).filter(|m| m.count_ones() <= k).collect()
}

pub fn build_iota_basis(window: u32) -> IotaBasis {
    let mut entries = Vec::new();
    let mut elements = Vec::new();
    for n in 0..=window {
        for mask in masks_of_popcount_at_most(3) {
            entries.push((n, mask));
            elements.push(
                op_iota(&K16Elt::monomial(Coord::XiEta, n, mask, Scalar::one()))
                    .expect("exact element"),
            );
        }
    }
    // Kernel of the matrix whose columns are the spanning vectors.
    let mut keys: BTreeMap<(u32, u8), usize> = BTreeMap::new();
    for e in &elements {
        for (key, _) in e.terms() {
            let next = keys.len();
            keys.entry(*key).or_insert(next);
        }
    }
    let mut mat = Matrix::zero(keys.len(), elements.len());
    for (col, e) in elements.iter().enumerate() {
        for (key, c) in e.terms() {
            mat.set(keys[key], col, c.clone());
        }
    }
    let kernel = mat.kernel();

    let mut span = SpanBuilder::new();
    let mut basis_indices = Vec::new();
    for (i, e) in elements.iter().enumerate() {
        let coords: BTreeMap<(u32, u8), Scalar> =
            e.terms().map(|(k, c)| (*k, c.clone())).collect();
        if span.insert(&coords) {
            basis_indices.push(i);
        }
    }

    IotaBasis {
        window,
        entries,
        elements,
        basis_indices,
        kernel,
        span,
    }
}

impl IotaBasis {
    pub fn rank(&self) -> usize {
        self.basis_indices.len()
    }

    /// Coordinates of f over the spanning entries, if f is in the span.
    pub fn decompose(&mut self, f: &K16Elt) -> Option<BTreeMap<usize, Scalar>> {
        let f = f.change_coords(Coord::XiEta);
        let coords: BTreeMap<(u32, u8), Scalar> =
            f.terms().map(|(k, c)| (*k, c.clone())).collect();
        self.span.solve(&coords)
    }

    /// Psi on an arbitrary element of the iota image, through an exact
    /// decomposition over the spanning set.
    pub fn psi44(&mut self, f: &K16Elt) -> Result<E44Elt> {
        let coords = self.decompose(f).ok_or(Error::NotInIotaSpan)?;
        let mut out = E44Elt::zero();
        for (i, c) in coords {
            let (n, mask) = self.entries[i];
            out = out.add(&psi44_of_iota_monomial(n, mask).scale(&c))?;
        }
        Ok(out)
    }

    /// Dimension of the degree-d slice of the iota image under the
    /// principal (2|1,1,1,1,1,1) grading of K(1,6).
    pub fn principal_slice_dim(&self, d: i64) -> usize {
        let mut span = SpanBuilder::new();
        let mut rank = 0usize;
        for e in &self.elements {
            if crate::e16k16::degree_k16_principal(e) != Degree::Homogeneous(d) {
                continue;
            }
            let coords: BTreeMap<(u32, u8), Scalar> =
                e.terms().map(|(k, c)| (*k, c.clone())).collect();
            if span.insert(&coords) {
                rank += 1;
            }
        }
        rank
    }

    /// Every kernel relation of the spanning set must map to zero in
    /// E(4,4); this is the well-definedness of Psi.
    pub fn check_psi44_well_defined(&self) -> Result<()> {
        for rel in &self.kernel {
            let mut image = E44Elt::zero();
            for (i, c) in rel.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (n, mask) = self.entries[i];
                image = image.add(&psi44_of_iota_monomial(n, mask).scale(c))?;
            }
            if !image.is_zero() {
                return Err(Error::Invariant(format!(
                    "kernel relation maps to nonzero element {image}"
                )));
            }
        }
        Ok(())
    }
}

/// A K(1,6) monomial built from a generator sequence (sign absorbed).
pub fn k16_from_seq(coord: Coord, t_exp: u32, bits: &[u8]) -> K16Elt {
    let (s, mask) = seq_sort_sign(bits);
    assert!(s != 0, "repeated generator");
    K16Elt::monomial(coord, t_exp, mask, Scalar::from_int(s as i64))
}

fn xi_bit(i: u8) -> u8 {
    i - 2
}

fn eta_bit(i: u8) -> u8 {
    i + 1
}

/// One row family of the iota table (Table 1 shape): for each cyclic
/// (i,j,k) instance, the monomial and the expected image of iota.
pub struct IotaTableRow {
    pub label: String,
    pub input: K16Elt,
    pub expected: K16Elt,
}

pub const CYCLIC: [(u8, u8, u8); 3] = [(2, 3, 4), (3, 4, 2), (4, 2, 3)];

/// The 18 instances of the six iota row families, cyclic in (i,j,k).
pub fn iota_table() -> Vec<IotaTableRow> {
    let mut rows = Vec::new();
    for (i, j, k) in CYCLIC {
        let m = |bits: &[u8]| k16_from_seq(Coord::XiEta, 0, bits);
        let entries: Vec<(String, K16Elt, K16Elt)> = vec![
            (
                format!("eta{i}*eta{j}*eta{k}"),
                m(&[eta_bit(i), eta_bit(j), eta_bit(k)]),
                m(&[eta_bit(i), eta_bit(j), eta_bit(k)]).scale(&Scalar::from_int(2)),
            ),
            (
                format!("xi{j}*eta{j}*eta{i}"),
                m(&[xi_bit(j), eta_bit(j), eta_bit(i)]),
                m(&[xi_bit(j), eta_bit(j), eta_bit(i)])
                    .add(&m(&[xi_bit(k), eta_bit(k), eta_bit(i)]))
                    .expect("same coord"),
            ),
            (
                format!("xi{i}*eta{j}*eta{k}"),
                m(&[xi_bit(i), eta_bit(j), eta_bit(k)]),
                K16Elt::zero(Coord::XiEta),
            ),
            (
                format!("xi{j}*xi{i}*eta{i}"),
                m(&[xi_bit(j), xi_bit(i), eta_bit(i)]),
                m(&[xi_bit(j), xi_bit(i), eta_bit(i)])
                    .sub(&m(&[xi_bit(j), xi_bit(k), eta_bit(k)]))
                    .expect("same coord"),
            ),
            (
                format!("xi{i}*xi{j}*eta{k}"),
                m(&[xi_bit(i), xi_bit(j), eta_bit(k)]),
                m(&[xi_bit(i), xi_bit(j), eta_bit(k)]).scale(&Scalar::from_int(2)),
            ),
            (
                format!("xi{i}*xi{j}*xi{k}"),
                m(&[xi_bit(i), xi_bit(j), xi_bit(k)]),
                K16Elt::zero(Coord::XiEta),
            ),
        ];
        for (label, input, expected) in entries {
            rows.push(IotaTableRow {
                label,
                input,
                expected,
            });
        }
    }
    rows
}

/// One row of the Psi table (Table 2 shape).
pub struct PsiTableRow {
    pub label: String,
    pub input: K16Elt,
    pub iota: K16Elt,
    pub expected: E44Elt,
}

/// The instances of the eleven Psi row families ("1" has a single
/// instance, the rest are cyclic in (i,j,k)).
pub fn psi_table() -> Vec<PsiTableRow> {
    let mut rows = Vec::new();
    let one = K16Elt::one(Coord::XiEta);
    rows.push(PsiTableRow {
        label: "1".into(),
        input: one.clone(),
        iota: one,
        expected: e44_d1(),
    });
    let half_sqrt2 = &Scalar::ratio(1, 2) * &Scalar::sqrt2();
    let sqrt2 = Scalar::sqrt2();
    for (i, j, k) in CYCLIC {
        let m = |bits: &[u8]| k16_from_seq(Coord::XiEta, 0, bits);
        let entries: Vec<(String, K16Elt, K16Elt, E44Elt)> = vec![
            (
                format!("eta{i}*eta{j}"),
                m(&[eta_bit(i), eta_bit(j)]),
                m(&[eta_bit(i), eta_bit(j)]),
                e44_dk(k),
            ),
            (
                format!("eta{i}"),
                m(&[eta_bit(i)]),
                m(&[eta_bit(i)]),
                e44_form(EvenMono::unit(), i, half_sqrt2.clone()),
            ),
            (
                format!("eta{i}*eta{j}*eta{k}"),
                m(&[eta_bit(i), eta_bit(j), eta_bit(k)]),
                m(&[eta_bit(i), eta_bit(j), eta_bit(k)]).scale(&Scalar::from_int(2)),
                e44_form(EvenMono::unit(), 1, -sqrt2.clone()),
            ),
            (
                format!("xi{i}*eta{j}"),
                m(&[xi_bit(i), eta_bit(j)]),
                m(&[xi_bit(i), eta_bit(j)]),
                e44_x_d(j, i),
            ),
            (
                format!("xi{i}*eta{i}"),
                m(&[xi_bit(i), eta_bit(i)]),
                m(&[xi_bit(i), eta_bit(i)]),
                e44_x_d(j, j).add(&e44_x_d(k, k)).expect("same shape").neg(),
            ),
            (
                format!("xi{i}"),
                m(&[xi_bit(i)]),
                m(&[xi_bit(i)]),
                e44_form(EvenMono::var(Var::X(k)), j, half_sqrt2.clone())
                    .sub(&e44_form(EvenMono::var(Var::X(j)), k, half_sqrt2.clone()))
                    .expect("same shape"),
            ),
            (
                format!("xi{j}*eta{j}*eta{i}"),
                m(&[xi_bit(j), eta_bit(j), eta_bit(i)]),
                m(&[xi_bit(j), eta_bit(j), eta_bit(i)])
                    .add(&m(&[xi_bit(k), eta_bit(k), eta_bit(i)]))
                    .expect("same coord"),
                e44_form(EvenMono::var(Var::X(i)), 1, sqrt2.clone()),
            ),
            (
                format!("xi{i}*xi{j}"),
                m(&[xi_bit(i), xi_bit(j)]),
                m(&[xi_bit(i), xi_bit(j)]),
                e44_xk_euler(k),
            ),
            (
                format!("xi{j}*xi{i}*eta{i}"),
                m(&[xi_bit(j), xi_bit(i), eta_bit(i)]),
                m(&[xi_bit(j), xi_bit(i), eta_bit(i)])
                    .sub(&m(&[xi_bit(j), xi_bit(k), eta_bit(k)]))
                    .expect("same coord"),
                {
                    let mut mono = EvenMono::var(Var::X(i));
                    mono.exps[k as usize] += 1;
                    e44_form(mono, 1, sqrt2.clone())
                },
            ),
            (
                format!("xi{i}*xi{j}*eta{k}"),
                m(&[xi_bit(i), xi_bit(j), eta_bit(k)]),
                m(&[xi_bit(i), xi_bit(j), eta_bit(k)]).scale(&Scalar::from_int(2)),
                e44_form(EvenMono::var_pow(Var::X(k), 2), 1, -sqrt2.clone()),
            ),
        ];
        for (label, input, iota, expected) in entries {
            rows.push(PsiTableRow {
                label,
                input,
                iota,
                expected,
            });
        }
    }
    rows
}

// ---------------------------------------------------------------------------
// The corollary subalgebra C[[x1]](V0 + V1) of E(4,4).
// ---------------------------------------------------------------------------

pub fn v0_basis() -> Vec<E44Elt> {
    let mut out = vec![e44_d1()];
    for i in 2..=4u8 {
        out.push(e44_dk(i));
    }
    for i in 2..=4u8 {
        for j in 2..=4u8 {
            out.push(e44_x_d(i, j));
        }
    }
    for i in 2..=4u8 {
        out.push(e44_xk_euler(i));
    }
    out
}

pub fn v1_basis() -> Vec<E44Elt> {
    let mut out = vec![e44_form(EvenMono::unit(), 1, Scalar::one())];
    for i in 2..=4u8 {
        out.push(e44_form(EvenMono::unit(), i, Scalar::one()));
    }
    for i in 2..=4u8 {
        for j in (i + 1)..=4u8 {
            out.push(
                e44_form(EvenMono::var(Var::X(i)), j, Scalar::one())
                    .sub(&e44_form(EvenMono::var(Var::X(j)), i, Scalar::one()))
                    .expect("same shape"),
            );
        }
    }
    for i in 2..=4u8 {
        out.push(e44_form(EvenMono::var(Var::X(i)), 1, Scalar::one()));
    }
    for i in 2..=4u8 {
        for j in i..=4u8 {
            let mut m = EvenMono::var(Var::X(i));
            m.exps[j as usize] += 1;
            out.push(e44_form(m, 1, Scalar::one()));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Verification suites.
// ---------------------------------------------------------------------------

/// Full homomorphism sweep for psi: [psi a, psi b] = psi [a, b] over every
/// pair of summand-type basis elements with t-degree at most `twindow`.
pub fn verify_psi_hom(twindow: u32) -> VerifyReport {
    use crate::e16k16::bracket_e16;
    use crate::vfalgebras::bracket_e510;
    let mut ck = Checker::new("thm-g00");
    ck.param("twindow", twindow);
    let basis = e16_basis(twindow);
    let images: Vec<E510Elt> = basis
        .iter()
        .map(|(_, e)| psi(e).expect("basis elements are valid"))
        .collect();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let lhs = bracket_e510(&images[i], &images[j]).expect("compatible");
            let rhs = psi(&bracket_e16(&basis[i].1, &basis[j].1).expect("compatible"))
                .expect("bracket stays in E(1,6)");
            let diff = lhs.sub(&rhs).expect("same algebra");
            let (la, lb) = (basis[i].0.clone(), basis[j].0.clone());
            ck.case(
                diff.is_zero(),
                move || vec![la, lb],
                move || rhs.to_string(),
                move || lhs.to_string(),
            );
        }
    }
    ck.finish()
}

/// The displayed computations in the isomorphism proof, as named
/// regression cases with the printed right-hand sides.
pub fn verify_g00_displays() -> VerifyReport {
    use crate::vfalgebras::bracket_e510;
    let mut ck = Checker::new("thm-g00-displays");
    let f_exp = 2u16; // f = t^2
    let g_exp = 3u16; // g = t^3
    let tf = t_mono(f_exp);
    let tg = t_mono(g_exp);

    // [psi(f Dt), psi(x_i x_j (x) g dt)]
    //   = d(f g (x_i d_j + x_j d_i)) + (1/2) d(f' g x_i x_j d_1), (i,j)=(2,3).
    {
        let a = psi(&E16Elt::w1(&tf)).unwrap();
        let q = PolySeries::var(X25, Var::X(2))
            .checked_mul(&PolySeries::var(X25, Var::X(3)))
            .unwrap();
        let b = psi(&E16Elt::s2(&q, &tg).unwrap()).unwrap();
        let got = bracket_e510(&a, &b).unwrap();
        let fg = x1_mono((f_exp + g_exp) as u32);
        let fpg = x1_mono((f_exp + g_exp - 1) as u32).scale(&Scalar::from_int(f_exp as i64));
        let one_form = DiffForm::poly_wedge(&fg.checked_mul(&x_var(2)).unwrap(), 1 << 3)
            .add(&DiffForm::poly_wedge(&fg.checked_mul(&x_var(3)).unwrap(), 1 << 2))
            .unwrap();
        let second = DiffForm::poly_wedge(
            &fpg.checked_mul(&x_var(2))
                .unwrap()
                .checked_mul(&x_var(3))
                .unwrap()
                .scale(&Scalar::ratio(1, 2)),
            1 << 1,
        );
        let expect = E510Elt::from_odd(form_d(&one_form).add(&form_d(&second)).unwrap()).unwrap();
        push_display(&mut ck, "w1-s2 display", &got, &expect);
    }

    // [psi(f Dt), psi(d_ij (x) g dt)]
    //   = (1/2) d(f g'(x_i d_j - x_j d_i)) - (1/4) d(f' g (x_i d_j - x_j d_i)).
    {
        let a = psi(&E16Elt::w1(&tf)).unwrap();
        let d23 = DiffForm::monomial(X25, EvenMono::unit(), 0b1100, Scalar::one());
        let b = psi(&E16Elt::lam2(&d23, &tg).unwrap()).unwrap();
        let got = bracket_e510(&a, &b).unwrap();
        let fgp = x1_mono((f_exp + g_exp - 1) as u32).scale(&Scalar::from_int(g_exp as i64));
        let fpg = x1_mono((f_exp + g_exp - 1) as u32).scale(&Scalar::from_int(f_exp as i64));
        let pair = |p: &PolySeries| {
            DiffForm::poly_wedge(&p.checked_mul(&x_var(2)).unwrap(), 1 << 3)
                .sub(&DiffForm::poly_wedge(&p.checked_mul(&x_var(3)).unwrap(), 1 << 2))
                .unwrap()
        };
        let expect = E510Elt::from_odd(
            form_d(&pair(&fgp.scale(&Scalar::ratio(1, 2))))
                .sub(&form_d(&pair(&fpg.scale(&Scalar::ratio(1, 4)))))
                .unwrap(),
        )
        .unwrap();
        push_display(&mut ck, "w1-lam2 display", &got, &expect);
    }

    // [psi(x_h x_k (x) f dt), psi(d_ij (x) g dt)] = f g (-x_h D_h + x_k D_k)
    // for (i,j,h,k) = (2,3,4,5).
    {
        let q = PolySeries::var(X25, Var::X(4))
            .checked_mul(&PolySeries::var(X25, Var::X(5)))
            .unwrap();
        let a = psi(&E16Elt::s2(&q, &tf).unwrap()).unwrap();
        let d23 = DiffForm::monomial(X25, EvenMono::unit(), 0b1100, Scalar::one());
        let b = psi(&E16Elt::lam2(&d23, &tg).unwrap()).unwrap();
        let got = bracket_e510(&a, &b).unwrap();
        let fg = x1_mono((f_exp + g_exp) as u32);
        let field = linear_field(4, &fg.neg()).add(&linear_field(5, &fg)).unwrap();
        let expect = E510Elt::from_even(field).unwrap();
        push_display(&mut ck, "s2-lam2 display", &got, &expect);
    }

    // [psi(d_ij (x) f dt), psi(d_hk (x) g dt)]
    //   = f g D1 - (1/2) f g'(x_h D_h + x_k D_k) - (1/2) f' g (x_i D_i + x_j D_j).
    {
        let d23 = DiffForm::monomial(X25, EvenMono::unit(), 0b1100, Scalar::one());
        let d45 = DiffForm::monomial(X25, EvenMono::unit(), 0b110000, Scalar::one());
        let a = psi(&E16Elt::lam2(&d23, &tf).unwrap()).unwrap();
        let b = psi(&E16Elt::lam2(&d45, &tg).unwrap()).unwrap();
        let got = bracket_e510(&a, &b).unwrap();
        let fg = x1_mono((f_exp + g_exp) as u32);
        let fgp = x1_mono((f_exp + g_exp - 1) as u32).scale(&Scalar::from_int(g_exp as i64));
        let fpg = x1_mono((f_exp + g_exp - 1) as u32).scale(&Scalar::from_int(f_exp as i64));
        let mut field = VectorField::from_component(X15, Var::X(1), fg);
        let minus_half = Scalar::ratio(-1, 2);
        for (v, p) in [(4u8, &fgp), (5u8, &fgp), (2u8, &fpg), (3u8, &fpg)] {
            field = field
                .add(&linear_field(v, &p.scale(&minus_half)))
                .unwrap();
        }
        let expect = E510Elt::from_even(field).unwrap();
        push_display(&mut ck, "lam2-lam2 display", &got, &expect);
    }

    ck.finish()
}

fn t_mono(n: u16) -> PolySeries {
    PolySeries::var_pow(VarSet::T, Var::T, n)
}

fn x1_mono(n: u32) -> PolySeries {
    PolySeries::var_pow(X15, Var::X(1), n as u16)
}

fn x_var(i: u8) -> PolySeries {
    PolySeries::var(X15, Var::X(i))
}

/// p * D_v as a vector field in x1..x5.
fn linear_field(v: u8, p: &PolySeries) -> VectorField {
    VectorField::from_component(X15, Var::X(v), p.checked_mul(&x_var(v)).unwrap())
}

fn push_display(ck: &mut Checker, label: &str, got: &E510Elt, expect: &E510Elt) {
    let pass = got.sub(expect).map(|d| d.is_zero()).unwrap_or(false);
    ck.simple_case(pass, label, &expect.to_string(), &got.to_string());
}

/// psi(z) is the displayed grading field, ad psi(z) reproduces the
/// (2,1,1,1,1) degrees on psi images, and the negative part is exactly
/// the displayed basis {D1, d_ij}.
pub fn grading_element_check(twindow: u32) -> VerifyReport {
    use crate::vfalgebras::bracket_e510;
    let mut ck = Checker::new("grading-element");
    ck.param("twindow", twindow);

    let z = psi_z();
    {
        let mut expect = VectorField::from_component(
            X15,
            Var::X(1),
            x1_mono(1).scale(&Scalar::from_int(2)),
        );
        for k in 2..=5u8 {
            expect = expect
                .add(&linear_field(k, &PolySeries::one(X15).scale(&Scalar::ratio(-1, 2))))
                .unwrap();
        }
        let pass = z.even() == &expect && z.odd().is_zero();
        ck.simple_case(pass, "psi(z) = 2 x1 D1 - (1/2) sum x_i D_i", &expect.to_string(), &z.to_string());
    }

    let principal_2111 = GradingType510::new([2, 1, 1, 1, 1]);
    let mut negative: Vec<String> = Vec::new();
    for (label, e) in e16_basis(twindow) {
        let img = psi(&e).unwrap();
        let expected_deg = match crate::e16k16::degree_e16_principal(&e) {
            Degree::Homogeneous(d) => d,
            other => {
                ck.simple_case(false, &label, "homogeneous", &format!("{other:?}"));
                continue;
            }
        };
        let got_deg = degree_510(&img, &principal_2111);
        let ad = bracket_e510(&z, &img).unwrap();
        let eigen_ok = ad.sub(&img.scale(&Scalar::from_int(expected_deg))).unwrap().is_zero();
        let pass = got_deg == Degree::Homogeneous(expected_deg) && eigen_ok;
        ck.case(
            pass,
            || vec![label.clone()],
            move || format!("ad psi(z) eigenvalue {expected_deg}"),
            move || format!("degree {got_deg:?}, eigen_ok {eigen_ok}"),
        );
        if expected_deg < 0 {
            negative.push(label);
        }
    }
    // L_{<0} = <D1 (from Dt), d_ij (x) dt>: 1 + 6 elements.
    let pass = negative.len() == 7
        && negative.contains(&"Dt".to_string())
        && (2..=5u8).all(|u| {
            ((u + 1)..=5u8).all(|v| negative.contains(&format!("d{u}{v}*dt")))
        });
    ck.simple_case(
        pass,
        "negative part is <Dt, d_ij (x) dt>",
        "7 basis elements",
        &format!("{negative:?}"),
    );
    ck.finish()
}

/// Theorem 4.7: the bracket relation for Psi over the paper's reduced
/// sweep f = t^n xi_I (|I| <= 3), g = eta_J, with the two exceptional
/// displays pinned, plus the two homogeneity lemmas at small n.
pub fn verify_psi44_hom(nmax: u32) -> Vec<VerifyReport> {
    use crate::e16k16::bracket_k16;
    use crate::vfalgebras::bracket_e44;

    let mut main = Checker::new("thm-4-7");
    main.param("n", format!("0..={}", nmax.max(1)));
    let eta_masks: Vec<u8> = (0u8..8).map(|m| m << 3).collect();
    for n in 0..=nmax.max(1) {
        for mask_f in masks_of_popcount_at_most(3) {
            for &mask_g in &eta_masks {
                let f = K16Elt::monomial(Coord::XiEta, n, mask_f, Scalar::one());
                let g = K16Elt::monomial(Coord::XiEta, 0, mask_g, Scalar::one());
                match bracket_iota_image(&f, &g) {
                    Err(err) => {
                        let (fs, gs) = (f.to_string(), g.to_string());
                        main.case(
                            false,
                            move || vec![fs, gs],
                            || "closure".into(),
                            move || err.to_string(),
                        );
                    }
                    Ok((_, h)) => {
                        let lhs = bracket_e44(
                            &psi44_of_iota_monomial(n, mask_f),
                            &psi44_of_iota_monomial(0, mask_g),
                        )
                        .unwrap();
                        let rhs = psi44_of_iota(&h);
                        let pass = lhs.sub(&rhs).unwrap().is_zero();
                        let (fs, gs) = (f.to_string(), g.to_string());
                        main.case(
                            pass,
                            move || vec![fs, gs],
                            move || rhs.to_string(),
                            move || lhs.to_string(),
                        );
                    }
                }
            }
        }
    }

    // The two exceptional-case displays, for n <= max(nmax, 3).
    let g_eta = k16_from_seq(Coord::XiEta, 0, &[3, 4, 5]); // eta2 eta3 eta4
    for n in 0..=nmax.max(3) {
        // [iota(t^n xi2 xi3 eta3), iota(eta2 eta3 eta4)] = 0.
        let f = k16_from_seq(Coord::XiEta, n, &[0, 1, 4]);
        let got = bracket_k16(&op_iota(&f).unwrap(), &op_iota(&g_eta).unwrap()).unwrap();
        main.simple_case(
            got.is_zero(),
            &format!("[iota(t^{n} xi2 xi3 eta3), iota(eta2 eta3 eta4)]"),
            "0",
            &got.to_string(),
        );

        // [iota(t^n xi3 xi4), iota(eta2 eta3 eta4)] = -2 iota(t^n xi4 eta2 eta4),
        // and Psi of both sides is 2^{n+1} sqrt2 x1^n x2 dx1.
        let f = k16_from_seq(Coord::XiEta, n, &[1, 2]);
        let got = bracket_k16(&op_iota(&f).unwrap(), &op_iota(&g_eta).unwrap()).unwrap();
        let rhs_mono = k16_from_seq(Coord::XiEta, n, &[2, 3, 5]);
        let expect = op_iota(&rhs_mono).unwrap().scale(&Scalar::from_int(-2));
        main.simple_case(
            got.sub(&expect).unwrap().is_zero(),
            &format!("[iota(t^{n} xi3 xi4), iota(eta2 eta3 eta4)]"),
            &expect.to_string(),
            &got.to_string(),
        );
        let lhs44 = bracket_e44(
            &psi44_of_iota_monomial(n, 0b110),
            &psi44_of_iota_monomial(0, 0b111000),
        )
        .unwrap();
        let mut m = EvenMono::var_pow(Var::X(1), n as u16);
        m.exps[2] += 1;
        let display = E44Elt::from_odd(DiffForm::monomial(
            X14,
            m,
            1 << 1,
            &Scalar::from_int(2i64 << n) * &Scalar::sqrt2(),
        ))
        .unwrap();
        let psi_rhs = psi44_of_iota(&rhs_mono).scale(&Scalar::from_int(-2));
        let pass = lhs44.sub(&display).unwrap().is_zero()
            && psi_rhs.sub(&display).unwrap().is_zero();
        main.simple_case(
            pass,
            &format!("Psi sides at n={n} give 2^{{n+1}} sqrt2 x1^n x2 dx1"),
            &display.to_string(),
            &lhs44.to_string(),
        );
    }
    let main = main.finish();

    // Lemma: [x1^n A, B] = (1-n) x1^n [A,B] + n x1^{n-1} [x1 A, B] for
    // table images (whose coefficients do not involve x1).
    let mut l1 = Checker::new("lemmahomo1");
    l1.param("n", format!("2..={}", nmax.max(2) + 1));
    let images: Vec<(u8, E44Elt)> = masks_of_popcount_at_most(3)
        .into_iter()
        .map(|m| (m, psi44_base_image(m)))
        .filter(|(_, e)| !e.is_zero())
        .collect();
    for n in 2..=nmax.max(2) + 1 {
        let x1n = PolySeries::var_pow(X14, Var::X(1), n as u16);
        let x1n1 = PolySeries::var_pow(X14, Var::X(1), (n - 1) as u16);
        let x1 = PolySeries::var(X14, Var::X(1));
        for (ma, a) in &images {
            let x1n_a = a.mul_poly(&x1n).unwrap();
            let x1_a = a.mul_poly(&x1).unwrap();
            for (mb, b) in &images {
                let lhs = bracket_e44(&x1n_a, b).unwrap();
                let rhs = bracket_e44(a, b)
                    .unwrap()
                    .mul_poly(&x1n)
                    .unwrap()
                    .scale(&Scalar::from_int(1 - n as i64))
                    .add(
                        &bracket_e44(&x1_a, b)
                            .unwrap()
                            .mul_poly(&x1n1)
                            .unwrap()
                            .scale(&Scalar::from_int(n as i64)),
                    )
                    .unwrap();
                let pass = lhs.sub(&rhs).unwrap().is_zero();
                let label = format!("n={n} masks ({ma:#08b}, {mb:#08b})");
                l1.case(pass, move || vec![label], || "equal".into(), || "differ".into());
            }
        }
    }
    let l1 = l1.finish();

    // Lemma: [t^n xi_I, xi_J] = -n t^{n-1} (2-|J|) xi_I xi_J
    //        + (-1)^{|I|} t^n sum_i (dxi_i xi_I deta_i xi_J + deta_i xi_I dxi_i xi_J),
    // hence the (1-n)/n decomposition, hence the iota conclusion when
    // [A(t^n xi_I), A(xi_J)] = 0.
    let mut l2 = Checker::new("lemmahomo2");
    l2.param("n", format!("1..={}", nmax.max(2)));
    for n in 1..=nmax.max(2) {
        for mask_i in masks_of_popcount_at_most(3) {
            for mask_j in masks_of_popcount_at_most(3) {
                let f = K16Elt::monomial(Coord::XiEta, n, mask_i, Scalar::one());
                let f1 = K16Elt::monomial(Coord::XiEta, 1, mask_i, Scalar::one());
                let f0 = K16Elt::monomial(Coord::XiEta, 0, mask_i, Scalar::one());
                let g = K16Elt::monomial(Coord::XiEta, 0, mask_j, Scalar::one());
                let direct = bracket_k16(&f, &g).unwrap();

                // The displayed general formula.
                let mut formula = K16Elt::zero(Coord::XiEta);
                let dj = mask_j.count_ones() as i64;
                let ws = crate::grassmann::wedge_sign(mask_i, mask_j);
                if ws != 0 {
                    formula.add_term(
                        n - 1,
                        mask_i | mask_j,
                        Scalar::from_int(-(n as i64) * (2 - dj) * ws as i64),
                    );
                }
                let pf = if mask_i.count_ones() % 2 == 0 { 1i64 } else { -1 };
                for (bf, bg) in [(0u8, 3u8), (1, 4), (2, 5), (3, 0), (4, 1), (5, 2)] {
                    if let (Some((s1, r1)), Some((s2, r2))) = (
                        crate::grassmann::partial_mono(mask_i, bf),
                        crate::grassmann::partial_mono(mask_j, bg),
                    ) {
                        let w = crate::grassmann::wedge_sign(r1, r2);
                        if w != 0 {
                            formula.add_term(
                                n,
                                r1 | r2,
                                Scalar::from_int(pf * s1 as i64 * s2 as i64 * w as i64),
                            );
                        }
                    }
                }
                let formula_ok = direct.sub(&formula).unwrap().is_zero();

                // The (1-n) t^n [xi_I, xi_J] + n t^{n-1} [t xi_I, xi_J] form.
                let decomp = t_shift(&bracket_k16(&f0, &g).unwrap(), n)
                    .scale(&Scalar::from_int(1 - n as i64))
                    .add(
                        &t_shift(&bracket_k16(&f1, &g).unwrap(), n - 1)
                            .scale(&Scalar::from_int(n as i64)),
                    )
                    .unwrap();
                let decomp_ok = direct.sub(&decomp).unwrap().is_zero();

                // The iota-level conclusion under the vanishing hypothesis.
                let hyp = bracket_k16(&op_a(&f).unwrap(), &op_a(&g).unwrap())
                    .unwrap()
                    .is_zero();
                let iota_ok = if hyp {
                    let lhs = bracket_k16(&op_iota(&f).unwrap(), &op_iota(&g).unwrap()).unwrap();
                    let rhs = op_iota(&decomp).unwrap();
                    lhs.sub(&rhs).unwrap().is_zero()
                } else {
                    true
                };

                let pass = formula_ok && decomp_ok && iota_ok;
                let label = format!("n={n} masks ({mask_i:#08b}, {mask_j:#08b})");
                l2.case(
                    pass,
                    move || vec![label],
                    || "formula, decomposition, iota conclusion".into(),
                    move || format!("formula {formula_ok}, decomp {decomp_ok}, iota {iota_ok}"),
                );
            }
        }
    }
    let l2 = l2.finish();

    vec![main, l1, l2]
}

/// Multiply every t-exponent by shifting: t^k -> t^{k+shift}.
fn t_shift(f: &K16Elt, shift: u32) -> K16Elt {
    let mut out = K16Elt::zero(f.coord).with_trunc(f.trunc.map(|t| t + shift));
    for ((n, m), c) in f.terms() {
        out.add_term(n + shift, *m, c.clone());
    }
    out
}

/// The corollary: C[[x1]](V0 + V1) is a subalgebra. All brackets of
/// x1-power multiples of the bases stay in the span, the Psi image lies
/// in the span, and the embedded principal grading has dimensions
/// (1, 6, 16, 16) in degrees -2..1.
pub fn verify_corollary(window: u32) -> VerifyReport {
    use crate::vfalgebras::bracket_e44;
    let mut ck = Checker::new("corollary");
    ck.param("window", window);

    let basis: Vec<E44Elt> = v0_basis().into_iter().chain(v1_basis()).collect();
    // The x1-stripped V-span.
    let mut vspan: SpanBuilder<crate::vfalgebras::E44Key> = SpanBuilder::new();
    for v in &basis {
        vspan.insert(&v.coords());
    }
    ck.simple_case(
        vspan.rank() == 32,
        "V0 + V1 has dimension 32",
        "32",
        &vspan.rank().to_string(),
    );

    let in_span = |e: &E44Elt, vspan: &mut SpanBuilder<crate::vfalgebras::E44Key>| -> bool {
        // Split by x1-degree; each slice must lie in V0 + V1.
        let mut slices: BTreeMap<u16, BTreeMap<crate::vfalgebras::E44Key, Scalar>> =
            BTreeMap::new();
        for (key, c) in e.coords() {
            let (stripped, x1deg) = strip_x1_key(key);
            slices.entry(x1deg).or_default().insert(stripped, c);
        }
        slices.values().all(|s| vspan.contains(s))
    };

    for a in 0..=window {
        let x1a = PolySeries::var_pow(X14, Var::X(1), a as u16);
        for b in a..=window {
            let x1b = PolySeries::var_pow(X14, Var::X(1), b as u16);
            for (i, v) in basis.iter().enumerate() {
                let va = v.mul_poly(&x1a).unwrap();
                for (j, w) in basis.iter().enumerate() {
                    if b == a && j < i {
                        continue;
                    }
                    let wb = w.mul_poly(&x1b).unwrap();
                    let bracket = bracket_e44(&va, &wb).unwrap();
                    let pass = in_span(&bracket, &mut vspan);
                    ck.case(
                        pass,
                        move || vec![format!("x1^{a} v{i}"), format!("x1^{b} v{j}")],
                        || "in C[x1](V0+V1)".into(),
                        move || format!("escapes the span: {bracket}"),
                    );
                }
            }
        }
    }

    // Psi image containment and the dimension profile.
    let iota_basis = build_iota_basis(window.min(3));
    for (idx, (n, mask)) in iota_basis.entries.iter().enumerate() {
        let img = psi44_of_iota_monomial(*n, *mask);
        let pass = in_span(&img, &mut vspan);
        let label = format!("Psi(iota(t^{n} xi[{mask:#08b}]))");
        let _ = idx;
        ck.case(
            pass,
            move || vec![label],
            || "in C[x1](V0+V1)".into(),
            move || "escapes the span".into(),
        );
    }
    for (d, expect) in [(-2i64, 1usize), (-1, 6), (0, 16), (1, 16)] {
        let got = iota_basis.principal_slice_dim(d);
        ck.simple_case(
            got == expect,
            &format!("embedded E(1,6) principal slice degree {d}"),
            &expect.to_string(),
            &got.to_string(),
        );
    }
    ck.finish()
}

fn strip_x1_key(key: crate::vfalgebras::E44Key) -> (crate::vfalgebras::E44Key, u16) {
    use crate::vfalgebras::E44Key;
    match key {
        E44Key::Even(v, mut m) => {
            let d = m.exps[1];
            m.exps[1] = 0;
            (E44Key::Even(v, m), d)
        }
        E44Key::Odd(mask, mut m) => {
            let d = m.exps[1];
            m.exps[1] = 0;
            (E44Key::Odd(mask, m), d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::e16k16::bracket_e16;
    use crate::vfalgebras::bracket_e510;

    fn t_pow(n: u16) -> PolySeries {
        PolySeries::var_pow(VarSet::T, Var::T, n)
    }

    #[test]
    fn psi_item_formulas() {
        // Item (1): f = t^2.
        let mut a = E16Elt::zero();
        a.add_w1(2, Scalar::one());
        let img = psi(&a).unwrap();
        let mut expect = VectorField::from_component(
            X15,
            Var::X(1),
            PolySeries::var_pow(X15, Var::X(1), 2),
        );
        for kk in 2..=5u8 {
            let mut m = EvenMono::var(Var::X(1));
            m.exps[kk as usize] += 1;
            expect = expect
                .add(&VectorField::from_component(
                    X15,
                    Var::X(kk),
                    PolySeries::monomial(X15, m, Scalar::ratio(-1, 2)),
                ))
                .unwrap();
        }
        assert_eq!(img.even(), &expect);
        assert!(img.odd().is_zero());

        // Item (3) also equals -d(f(x1) x_i x_j d1); take i=2, j=3, f=t^2.
        let q = PolySeries::var(X25, Var::X(2))
            .checked_mul(&PolySeries::var(X25, Var::X(3)))
            .unwrap();
        let s2 = E16Elt::s2(&q, &t_pow(2)).unwrap();
        let img = psi(&s2).unwrap();
        let mut m = EvenMono::var_pow(Var::X(1), 2);
        m.exps[2] += 1;
        m.exps[3] += 1;
        let inner = DiffForm::monomial(X15, m, 1 << 1, Scalar::one());
        assert_eq!(img.odd(), &form_d(&inner).neg());
        assert!(img.even().is_zero());

        // Item (4) also equals (1/2) d(f(x1)(x_i d_j - x_j d_i)); i=2, j=3.
        let d23 = DiffForm::monomial(X25, EvenMono::unit(), 0b1100, Scalar::one());
        let lam = E16Elt::lam2(&d23, &t_pow(2)).unwrap();
        let img = psi(&lam).unwrap();
        let mut m2 = EvenMono::var_pow(Var::X(1), 2);
        m2.exps[2] += 1;
        let mut m3 = EvenMono::var_pow(Var::X(1), 2);
        m3.exps[3] += 1;
        let inner = DiffForm::monomial(X15, m2, 1 << 3, Scalar::one())
            .sub(&DiffForm::monomial(X15, m3, 1 << 2, Scalar::one()))
            .unwrap();
        assert_eq!(img.odd(), &form_d(&inner).scale(&Scalar::ratio(1, 2)));
    }

    #[test]
    fn psi_z_is_the_grading_field() {
        let z = psi_z();
        let mut expect = VectorField::from_component(
            X15,
            Var::X(1),
            PolySeries::var(X15, Var::X(1)).scale(&Scalar::from_int(2)),
        );
        for kk in 2..=5u8 {
            expect = expect
                .add(&VectorField::from_component(
                    X15,
                    Var::X(kk),
                    PolySeries::var(X15, Var::X(kk)).scale(&Scalar::ratio(-1, 2)),
                ))
                .unwrap();
        }
        assert_eq!(z.even(), &expect);
    }

    #[test]
    fn psi_images_live_in_degree_zero() {
        let g = GradingType510::new([0, 1, 1, 1, 1]);
        for (label, e) in e16_basis(3) {
            let img = psi(&e).unwrap();
            let d = degree_510(&img, &g);
            assert_eq!(d, Degree::Homogeneous(0), "{label} maps off degree 0");
        }
    }

    #[test]
    fn psi_inverse_round_trip() {
        for (label, e) in e16_basis(3) {
            let img = psi(&e).unwrap();
            let back = psi_inverse(&img).unwrap();
            assert!(back.sub(&e).is_zero(), "round trip failed on {label}");
        }
        // A combined element.
        let mut e = E16Elt::zero();
        e.add_w1(2, Scalar::ratio(3, 2));
        e.add_sl4(2, 3, 1, Scalar::one());
        e.add_sl4(2, 2, 0, Scalar::one());
        e.add_sl4(3, 3, 0, Scalar::from_int(-1));
        e.add_s2(2, 2, 1, Scalar::i());
        e.add_lam2(4, 5, 2, Scalar::sqrt2());
        let back = psi_inverse(&psi(&e).unwrap()).unwrap();
        assert!(back.sub(&e).is_zero());
    }

    #[test]
    fn psi_inverse_rejects_outside_g0() {
        // x2 D1 is divergence free but has degree 1 in the (0,1,1,1,1)
        // grading, hence is not in g0.
        let bad = E510Elt::from_even(VectorField::from_component(
            X15,
            Var::X(1),
            PolySeries::var(X15, Var::X(2)),
        ))
        .unwrap();
        assert!(matches!(psi_inverse(&bad), Err(Error::NotInG0(_))));
        // d12 is closed but sits in degree -1, not in g0.
        let bad = E510Elt::from_odd(DiffForm::monomial(
            X15,
            EvenMono::unit(),
            0b110,
            Scalar::one(),
        ))
        .unwrap();
        assert!(matches!(psi_inverse(&bad), Err(Error::NotInG0(_))));
    }

    #[test]
    fn psi_is_a_homomorphism_smoke() {
        // A handful of mixed-pair cases; the exhaustive sweep is the
        // thm-g00 suite.
        let basis = e16_basis(2);
        let step = 7usize;
        for (idx, (la, a)) in basis.iter().enumerate() {
            let (lb, b) = &basis[(idx * step + 3) % basis.len()];
            let lhs = bracket_e510(&psi(a).unwrap(), &psi(b).unwrap()).unwrap();
            let rhs = psi(&bracket_e16(a, b).unwrap()).unwrap();
            assert!(
                lhs.sub(&rhs).unwrap().is_zero(),
                "psi breaks on [{la}, {lb}]"
            );
        }
    }

    #[test]
    fn iota_table_matches_computed_iota() {
        for row in iota_table() {
            let got = op_iota(&row.input).unwrap();
            assert!(
                got.sub(&row.expected).unwrap().is_zero(),
                "iota({}) = {} but table says {}",
                row.label,
                got,
                row.expected
            );
        }
    }

    #[test]
    fn psi_table_consistency() {
        for row in psi_table() {
            let got_iota = op_iota(&row.input).unwrap();
            assert!(
                got_iota.sub(&row.iota).unwrap().is_zero(),
                "iota mismatch on {}",
                row.label
            );
            let got = psi44_of_iota(&row.input);
            assert!(
                got.sub(&row.expected).unwrap().is_zero(),
                "Psi(iota({})) = {got} but table says {}",
                row.label,
                row.expected
            );
        }
    }

    #[test]
    fn iota_basis_dimensions_and_kernel() {
        let mut basis = build_iota_basis(1);
        // Degree slices of the principal grading: 1, 6, 16, 16.
        assert_eq!(basis.principal_slice_dim(-2), 1);
        assert_eq!(basis.principal_slice_dim(-1), 6);
        assert_eq!(basis.principal_slice_dim(0), 16);
        assert_eq!(basis.principal_slice_dim(1), 16);
        // Per fixed n, the |I|=3 block has rank 10 and the whole spanning
        // set {iota(t^n xi_I)} collapses by the Table-1 relations:
        // 42 columns per n, rank 32.
        assert_eq!(basis.rank(), 64);
        assert_eq!(basis.kernel.len(), 2 * 42 - 64);
        basis.check_psi44_well_defined().unwrap();
        // Decomposition round trip on a nontrivial iota value.
        let f = k16_from_seq(Coord::XiEta, 1, &[0, 1, 4]).scale(&Scalar::ratio(3, 7));
        let iota_f = op_iota(&f).unwrap();
        assert!(basis.decompose(&iota_f).is_some());
        let via_basis = basis.psi44(&iota_f).unwrap();
        let direct = psi44_of_iota(&f);
        assert!(via_basis.sub(&direct).unwrap().is_zero());
    }

    #[test]
    fn psi44_rejects_non_iota_elements() {
        let mut basis = build_iota_basis(1);
        // xi2 xi3 xi4 is in the kernel of iota, so the raw monomial is not
        // in the image.
        let f = k16_from_seq(Coord::XiEta, 0, &[0, 1, 2]);
        assert!(matches!(basis.psi44(&f), Err(Error::NotInIotaSpan)));
    }

    #[test]
    fn corollary_bases_have_expected_sizes() {
        assert_eq!(v0_basis().len(), 16);
        assert_eq!(v1_basis().len(), 16);
    }
}
