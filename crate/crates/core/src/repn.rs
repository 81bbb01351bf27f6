//! The decomposition of E(5,10) under the (0,1,1,1,1) grading as
//! E(1,6)-modules: slice bases, weights, highest-weight data, generation
//! from the vectors v_r, and the singular-vector-absence rank computation.
//!
//! Degrees: an element of g_r has (0,1,1,1,1)-degree r; the principal
//! (2,2,2,2,2) grading refines each g_r into finite-dimensional slices
//! g_{r,k} with k >= 2r-2 (even k for the even part, odd k for the odd
//! part). Slices are enumerated by solving the divergence and closedness
//! conditions exactly on the monomial span.

use std::collections::BTreeMap;
use std::fmt;

use crate::embeddings::{e16_basis, psi, psi_z};
use crate::error::{Error, Result};
use crate::formcalc::{form_d, vf_div, DiffForm, VectorField};
use crate::linalg::{Matrix, SpanBuilder};
use crate::scalar::Scalar;
use crate::series::{EvenMono, PolySeries, Var, VarSet};
use crate::verify::{Checker, VerifyReport};
use crate::vfalgebras::{bracket_e510, degree_510, Degree, E510Elt, E510Key, GradingType510};

const X15: VarSet = VarSet::X15;

/// One finite-dimensional slice g_{r,k}.
pub struct GrSlice {
    pub r: i64,
    pub k: i64,
    pub basis: Vec<E510Elt>,
}

/// Highest-weight data: eigenvalues of x2 D2 - x3 D3, x3 D3 - x4 D4,
/// x4 D4 - x5 D5 and of the grading element z.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightVec {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: Scalar,
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}; {})", self.a, self.b, self.c, self.d)
    }
}

/// Degree of a monomial in x2..x5 only.
fn outer_degree(m: &EvenMono) -> u32 {
    (2..=5).map(|i| m.exps[i] as u32).sum()
}

/// Monomials of a given degree in x2..x5.
fn outer_monomials(deg: u32) -> Vec<EvenMono> {
    let mut out = Vec::new();
    let d = deg as u16;
    for e2 in 0..=d {
        for e3 in 0..=(d - e2) {
            for e4 in 0..=(d - e2 - e3) {
                let e5 = d - e2 - e3 - e4;
                let mut m = EvenMono::unit();
                m.exps[2] = e2;
                m.exps[3] = e3;
                m.exps[4] = e4;
                m.exps[5] = e5;
                out.push(m);
            }
        }
    }
    out
}

/// Exact basis of g_{r,k} by solving the linear conditions on the
/// monomial span.
pub fn enumerate_slice(r: i64, k: i64) -> Result<GrSlice> {
    if r < -1 {
        return Err(Error::WindowExceeded(format!("r = {r} < -1")));
    }
    if k < 2 * r - 2 {
        return Err(Error::WindowExceeded(format!("k = {k} < 2r-2")));
    }
    let mut candidates: Vec<E510Elt> = Vec::new();
    if k.rem_euclid(2) == 0 {
        // Even part: x1^a p D1 with deg p = r, and x1^a q D_v with
        // deg q = r+1; fine degree 2(a + deg) - 2 = k.
        let mut monomial_fields: Vec<(Var, EvenMono)> = Vec::new();
        if r >= 0 {
            let a = (k + 2) / 2 - r;
            if a >= 0 {
                for m in outer_monomials(r as u32) {
                    let mut m = m;
                    m.exps[1] = a as u16;
                    monomial_fields.push((Var::X(1), m));
                }
            }
        }
        let a = (k + 2) / 2 - r - 1;
        if a >= 0 && r + 1 >= 0 {
            for v in 2..=5u8 {
                for m in outer_monomials((r + 1) as u32) {
                    let mut m = m;
                    m.exps[1] = a as u16;
                    monomial_fields.push((Var::X(v), m));
                }
            }
        }
        // Solve div X = 0 on the span.
        let mut keys: BTreeMap<EvenMono, usize> = BTreeMap::new();
        let mut cols: Vec<BTreeMap<usize, Scalar>> = Vec::new();
        for (v, m) in &monomial_fields {
            let field = VectorField::from_component(
                X15,
                *v,
                PolySeries::monomial(X15, *m, Scalar::one()),
            );
            let div = vf_div(&field);
            let mut col = BTreeMap::new();
            for (dm, dc) in div.terms() {
                let next = keys.len();
                let idx = *keys.entry(*dm).or_insert(next);
                col.insert(idx, dc.clone());
            }
            cols.push(col);
        }
        let mut mat = Matrix::zero(keys.len(), cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col {
                mat.set(*i, j, c.clone());
            }
        }
        for combo in mat.kernel() {
            let mut field = VectorField::zero(X15);
            for (j, c) in combo.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (v, m) = &monomial_fields[j];
                field = field.add(&VectorField::from_component(
                    X15,
                    *v,
                    PolySeries::monomial(X15, *m, c.clone()),
                ))?;
            }
            candidates.push(E510Elt::from_even(field)?);
        }
    } else {
        // Odd part: x1^a p d_uv (u,v >= 2, deg p = r) and x1^a q d_1v
        // (deg q = r+1); fine degree 2(a + deg) - 1 = k.
        let mut monomial_forms: Vec<(u8, EvenMono)> = Vec::new();
        if r >= 0 {
            let a = (k + 1) / 2 - r;
            if a >= 0 {
                for u in 2..=5u8 {
                    for v in (u + 1)..=5u8 {
                        for m in outer_monomials(r as u32) {
                            let mut m = m;
                            m.exps[1] = a as u16;
                            monomial_forms.push(((1 << u) | (1 << v), m));
                        }
                    }
                }
            }
        }
        let a = (k + 1) / 2 - r - 1;
        if a >= 0 {
            for v in 2..=5u8 {
                for m in outer_monomials((r + 1) as u32) {
                    let mut m = m;
                    m.exps[1] = a as u16;
                    monomial_forms.push(((1 << 1) | (1 << v), m));
                }
            }
        }
        let mut keys: BTreeMap<(EvenMono, u8), usize> = BTreeMap::new();
        let mut cols: Vec<BTreeMap<usize, Scalar>> = Vec::new();
        for (mask, m) in &monomial_forms {
            let form = DiffForm::monomial(X15, *m, *mask, Scalar::one());
            let d = form_d(&form);
            let mut col = BTreeMap::new();
            for ((dm, dmask), dc) in d.terms() {
                let next = keys.len();
                let idx = *keys.entry((*dm, *dmask)).or_insert(next);
                col.insert(idx, dc.clone());
            }
            cols.push(col);
        }
        let mut mat = Matrix::zero(keys.len(), cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col {
                mat.set(*i, j, c.clone());
            }
        }
        for combo in mat.kernel() {
            let mut form = DiffForm::zero(X15, 2);
            for (j, c) in combo.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (mask, m) = &monomial_forms[j];
                form.add_term(*m, *mask, c.clone());
            }
            candidates.push(E510Elt::from_odd(form)?);
        }
    }
    // Contract: every basis element is homogeneous of the right degrees.
    let g0 = GradingType510::new([0, 1, 1, 1, 1]);
    let principal = GradingType510::principal();
    for e in &candidates {
        debug_assert_eq!(degree_510(e, &g0), Degree::Homogeneous(r));
        debug_assert_eq!(degree_510(e, &principal), Degree::Homogeneous(k));
    }
    Ok(GrSlice {
        r,
        k,
        basis: candidates,
    })
}

/// The Cartan elements used for weights.
fn cartan_elements() -> [E510Elt; 3] {
    let h = |u: u8, v: u8| {
        let field = VectorField::from_component(X15, Var::X(u), PolySeries::var(X15, Var::X(u)))
            .add(
                &VectorField::from_component(X15, Var::X(v), PolySeries::var(X15, Var::X(v)))
                    .neg(),
            )
            .unwrap();
        E510Elt::from_even(field).unwrap()
    };
    [h(2, 3), h(3, 4), h(4, 5)]
}

/// The highest-weight vector v_r: D5 for r = -1 and x2^r D1 for r >= 0.
pub fn highest_vector(r: i64) -> E510Elt {
    if r == -1 {
        E510Elt::from_even(VectorField::unit(X15, Var::X(5))).unwrap()
    } else {
        E510Elt::from_even(VectorField::from_component(
            X15,
            Var::X(1),
            PolySeries::var_pow(X15, Var::X(2), r as u16),
        ))
        .unwrap()
    }
}

/// Weight of a simultaneous eigenvector under the three Cartan
/// differences and the grading element z.
pub fn weight_of(v: &E510Elt) -> Result<WeightVec> {
    if v.is_zero() {
        return Err(Error::NotEigenvector("the zero vector".into()));
    }
    let mut eigen = |h: &E510Elt, name: &str| -> Result<Scalar> {
        let bracket = bracket_e510(h, v)?;
        // lambda = first nonzero coordinate ratio; then check exactly.
        let coords = v.coords();
        let (key, base) = coords.iter().next().expect("nonzero");
        let lam = bracket
            .coords()
            .get(key)
            .cloned()
            .unwrap_or_else(Scalar::zero)
            .div(base)?;
        if bracket.sub(&v.scale(&lam))?.is_zero() {
            Ok(lam)
        } else {
            Err(Error::NotEigenvector(name.into()))
        }
    };
    let [h1, h2, h3] = cartan_elements();
    let a = eigen(&h1, "x2 D2 - x3 D3")?;
    let b = eigen(&h2, "x3 D3 - x4 D4")?;
    let c = eigen(&h3, "x4 D4 - x5 D5")?;
    let d = eigen(&psi_z(), "z")?;
    let as_int = |s: &Scalar, name: &str| -> Result<i64> {
        if !s.is_rational() || !s.rational_part().is_integer() {
            return Err(Error::NotEigenvector(format!(
                "{name} eigenvalue {s} is not an integer"
            )));
        }
        Ok(i64::try_from(s.rational_part().to_integer()).expect("small weight"))
    };
    Ok(WeightVec {
        a: as_int(&a, "x2 D2 - x3 D3")?,
        b: as_int(&b, "x3 D3 - x4 D4")?,
        c: as_int(&c, "x4 D4 - x5 D5")?,
        d,
    })
}

/// The displayed basis of the negative part of the embedded E(1,6):
/// D1 together with the six constant closed 2-forms d_uv, u,v >= 2.
pub fn negative_part_basis() -> Vec<E510Elt> {
    let mut out = vec![E510Elt::from_even(VectorField::unit(X15, Var::X(1))).unwrap()];
    for u in 2..=5u8 {
        for v in (u + 1)..=5u8 {
            out.push(
                E510Elt::from_odd(DiffForm::monomial(
                    X15,
                    EvenMono::unit(),
                    (1 << u) | (1 << v),
                    Scalar::one(),
                ))
                .unwrap(),
            );
        }
    }
    out
}

/// True iff [x, v] = 0 for every x in the negative-part basis.
pub fn annihilated_by_negative(v: &E510Elt) -> bool {
    negative_part_basis()
        .iter()
        .all(|x| bracket_e510(x, v).map(|b| b.is_zero()).unwrap_or(false))
}

/// Breadth-first span closure of ad(g0) applied to v_r inside the
/// window of x1-degree <= x1max, compared against the enumerated slices.
pub fn generation_check(r: i64, x1max: u32) -> VerifyReport {
    let mut ck = Checker::new("prop-generated");
    ck.param("r", r);
    ck.param("x1max", x1max);

    // Window: all fine degrees reachable with x1-degree <= x1max.
    let kmax = 2 * (x1max as i64 + r + 1);
    let mut window_dim = 0usize;
    let mut slices = Vec::new();
    for k in (2 * r - 2)..=kmax {
        let slice = enumerate_slice(r, k).expect("valid window");
        window_dim += slice.basis.len();
        slices.push(slice);
    }

    // Generators: psi images of the E(1,6) basis with t-degree <= x1max + 1.
    let generators: Vec<E510Elt> = e16_basis(x1max + 1)
        .into_iter()
        .map(|(_, e)| psi(&e).expect("valid basis"))
        .collect();

    let mut span: SpanBuilder<E510Key> = SpanBuilder::new();
    let v_r = highest_vector(r);
    span.insert(&v_r.coords());
    let mut frontier = vec![v_r.clone()];
    let mut rounds = 0u32;
    while !frontier.is_empty() {
        rounds += 1;
        if rounds > 50 {
            ck.mark_inconclusive();
            ck.simple_case(
                false,
                "span closure stabilization",
                "stabilized within 50 rounds",
                "iteration cap hit",
            );
            break;
        }
        let mut next = Vec::new();
        for g in &generators {
            for s in &frontier {
                let w = bracket_e510(g, s).expect("compatible");
                if w.is_zero() {
                    continue;
                }
                // Stay inside the fine-degree window; brackets of
                // homogeneous elements are homogeneous.
                match degree_510(&w, &GradingType510::principal()) {
                    Degree::Homogeneous(k) if k <= kmax => {}
                    _ => continue,
                }
                if w.coords().keys().any(|key| match key {
                    E510Key::Even(_, m) | E510Key::Odd(_, m) => m.exps[1] as u32 > x1max,
                }) {
                    continue;
                }
                if span.insert(&w.coords()) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }

    ck.simple_case(
        span.rank() == window_dim,
        &format!("span of ad(g0) words on v_{r} fills the window"),
        &format!("dimension {window_dim}"),
        &format!("dimension {}", span.rank()),
    );
    // Every slice basis vector is in the span (and conversely by the
    // window restriction of the closure).
    let mut span = span;
    for slice in &slices {
        for (i, e) in slice.basis.iter().enumerate() {
            let ok = span.contains(&e.coords());
            ck.case(
                ok,
                move || vec![format!("slice ({}, {}) basis vector {i}", slice.r, slice.k)],
                || "generated".into(),
                || "missing from the span".into(),
            );
        }
    }

    // The displayed ad computations, byte for byte.
    if r >= 0 {
        let v_r = highest_vector(r);
        for k in 1..=x1max.min(3) as i64 {
            // [x1^k x3 D4, v_r] = -k x1^{k-1} x2^r x3 D4
            let mut m = EvenMono::var_pow(Var::X(1), k as u16);
            m.exps[3] += 1;
            let g = E510Elt::from_even(VectorField::from_component(
                X15,
                Var::X(4),
                PolySeries::monomial(X15, m, Scalar::one()),
            ))
            .unwrap();
            let got = bracket_e510(&g, &v_r).unwrap();
            let mut em = EvenMono::var_pow(Var::X(1), (k - 1) as u16);
            em.exps[2] += r as u16;
            em.exps[3] += 1;
            let expect = E510Elt::from_even(VectorField::from_component(
                X15,
                Var::X(4),
                PolySeries::monomial(X15, em, Scalar::from_int(-k)),
            ))
            .unwrap();
            ck.simple_case(
                got.to_string() == expect.to_string(),
                &format!("[x1^{k} x3 D4, v_{r}]"),
                &expect.to_string(),
                &got.to_string(),
            );

            // [x1^k x3 D2, v_r] = r x1^k x2^{r-1} x3 D1 - k x1^{k-1} x2^r x3 D2
            let mut m = EvenMono::var_pow(Var::X(1), k as u16);
            m.exps[3] += 1;
            let g = E510Elt::from_even(VectorField::from_component(
                X15,
                Var::X(2),
                PolySeries::monomial(X15, m, Scalar::one()),
            ))
            .unwrap();
            let got = bracket_e510(&g, &v_r).unwrap();
            let mut expect_field = VectorField::zero(X15);
            if r >= 1 {
                let mut m1 = EvenMono::var_pow(Var::X(1), k as u16);
                m1.exps[2] += (r - 1) as u16;
                m1.exps[3] += 1;
                expect_field = expect_field
                    .add(&VectorField::from_component(
                        X15,
                        Var::X(1),
                        PolySeries::monomial(X15, m1, Scalar::from_int(r)),
                    ))
                    .unwrap();
            }
            let mut m2 = EvenMono::var_pow(Var::X(1), (k - 1) as u16);
            m2.exps[2] += r as u16;
            m2.exps[3] += 1;
            expect_field = expect_field
                .add(&VectorField::from_component(
                    X15,
                    Var::X(2),
                    PolySeries::monomial(X15, m2, Scalar::from_int(-k)),
                ))
                .unwrap();
            let expect = E510Elt::from_even(expect_field).unwrap();
            ck.simple_case(
                got.to_string() == expect.to_string(),
                &format!("[x1^{k} x3 D2, v_{r}]"),
                &expect.to_string(),
                &got.to_string(),
            );
        }

        // [x1 d23 + x2 d13, v_r] = -(r+1) x2^r d23
        let omega = DiffForm::monomial(X15, EvenMono::var(Var::X(1)), 0b1100, Scalar::one())
            .add(&DiffForm::monomial(
                X15,
                EvenMono::var(Var::X(2)),
                0b1010,
                Scalar::one(),
            ))
            .unwrap();
        let g = E510Elt::from_odd(omega).unwrap();
        let got = bracket_e510(&g, &highest_vector(r)).unwrap();
        let expect = E510Elt::from_odd(DiffForm::monomial(
            X15,
            EvenMono::var_pow(Var::X(2), r as u16),
            0b1100,
            Scalar::from_int(-(r + 1)),
        ))
        .unwrap();
        ck.simple_case(
            got.to_string() == expect.to_string(),
            &format!("[x1 d23 + x2 d13, v_{r}]"),
            &expect.to_string(),
            &got.to_string(),
        );
    }

    ck.finish()
}

/// Rank computation showing g_{r,2r-1} has no nonzero vector annihilated
/// by the negative part.
pub fn singular_absence(r: i64) -> VerifyReport {
    let mut ck = Checker::new("thm-3-5-singular-absence");
    ck.param("r", r);
    let slice = enumerate_slice(r, 2 * r - 1).expect("valid slice");
    let dim = slice.basis.len();
    if dim == 0 {
        ck.simple_case(true, &format!("g_({r},{}) is zero", 2 * r - 1), "0", "0");
        return ck.finish();
    }
    // Stack the maps v -> [x, v] for x in the negative basis and compute
    // the kernel.
    let mut keys: BTreeMap<(usize, E510Key), usize> = BTreeMap::new();
    let mut cols: Vec<BTreeMap<usize, Scalar>> = Vec::new();
    for v in &slice.basis {
        let mut col = BTreeMap::new();
        for (xi, x) in negative_part_basis().iter().enumerate() {
            let b = bracket_e510(x, v).expect("compatible");
            for (key, c) in b.coords() {
                let next = keys.len();
                let idx = *keys.entry((xi, key)).or_insert(next);
                col.insert(idx, c);
            }
        }
        cols.push(col);
    }
    let mut mat = Matrix::zero(keys.len(), dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col {
            mat.set(*i, j, c.clone());
        }
    }
    let kernel = mat.kernel();
    ck.simple_case(
        kernel.is_empty(),
        &format!("singular vectors in g_({r},{})", 2 * r - 1),
        "only 0",
        &format!("kernel of dimension {}", kernel.len()),
    );
    ck.finish()
}

/// The finite linear-algebra ingredients of the dual-module theorem:
/// weights of the highest vectors, annihilation by the negative part,
/// singular-vector absence, and the two-route dimension cross-check for
/// the lowest odd slices.
pub fn verify_thm35_linear(rmax: i64) -> VerifyReport {
    let mut ck = Checker::new("thm-3-5-linear");
    ck.param("rmax", rmax);

    // Weight table: v_{-1} has (0,0,1; 1/2), v_0 has (0,0,0; -2), v_r has
    // (r,0,0; -r/2-2).
    for r in -1..=rmax {
        let v = highest_vector(r);
        let got = weight_of(&v);
        let expect = if r == -1 {
            WeightVec {
                a: 0,
                b: 0,
                c: 1,
                d: Scalar::ratio(1, 2),
            }
        } else {
            WeightVec {
                a: r,
                b: 0,
                c: 0,
                d: Scalar::ratio(-r - 4, 2),
            }
        };
        let pass = got.as_ref() == Ok(&expect);
        ck.simple_case(
            pass,
            &format!("weight of v_{r}"),
            &expect.to_string(),
            &got.map(|w| w.to_string()).unwrap_or_else(|e| e.to_string()),
        );
        let ann = annihilated_by_negative(&highest_vector(r));
        ck.simple_case(
            ann,
            &format!("v_{r} annihilated by the negative part"),
            "true",
            &ann.to_string(),
        );
    }

    // A perturbed vector is not annihilated.
    {
        let mut bad = VectorField::from_component(X15, Var::X(1), PolySeries::var(X15, Var::X(3)));
        for (v, sign) in [(2u8, 1i64), (3u8, -1i64)] {
            let mut m = EvenMono::var(Var::X(1));
            m.exps[v as usize] += 1;
            bad = bad
                .add(&VectorField::from_component(
                    X15,
                    Var::X(v),
                    PolySeries::monomial(X15, m, Scalar::from_int(sign)),
                ))
                .unwrap();
        }
        let bad = E510Elt::from_even(bad).unwrap();
        ck.simple_case(
            !annihilated_by_negative(&bad),
            "perturbed x3 D1 is not annihilated",
            "false",
            &annihilated_by_negative(&bad).to_string(),
        );
        ck.simple_case(
            annihilated_by_negative(&E510Elt::zero()),
            "zero vector is annihilated",
            "true",
            "checked",
        );
    }

    for r in 1..=rmax {
        let rep = singular_absence(r);
        ck.simple_case(
            rep.ok(),
            &format!("singular absence at r = {r}"),
            "kernel 0",
            &format!("failures {}", rep.failures.len()),
        );
    }

    // dim g_{r,2r-1} two ways: condition solving vs the image of d on
    // degree-(r+1) 1-forms in x2..x5 (closed = exact in positive degree).
    for r in 1..=rmax {
        let dim_kernel = enumerate_slice(r, 2 * r - 1).unwrap().basis.len();
        let mut span: SpanBuilder<(EvenMono, u8)> = SpanBuilder::new();
        let mut rank = 0usize;
        for v in 2..=5u8 {
            for m in outer_monomials((r + 1) as u32) {
                let one_form = DiffForm::monomial(VarSet::X25, m, 1 << v, Scalar::one());
                let d = form_d(&one_form);
                let coords: BTreeMap<(EvenMono, u8), Scalar> =
                    d.terms().map(|(k, c)| (*k, c.clone())).collect();
                if span.insert(&coords) {
                    rank += 1;
                }
            }
        }
        ck.simple_case(
            dim_kernel == rank,
            &format!("dim of closed 2-forms of degree {r}, two routes"),
            &format!("kernel route {dim_kernel}"),
            &format!("image route {rank}"),
        );
    }

    ck.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slice_examples() {
        // g_{-1} slices exhaust <D_i, d_1j> (x) x1-powers: at fine degree
        // -2 the basis is the four D_i, at -1 the four d_1j.
        let s = enumerate_slice(-1, -2).unwrap();
        assert_eq!(s.basis.len(), 4);
        let s = enumerate_slice(-1, -1).unwrap();
        assert_eq!(s.basis.len(), 4);
        let s = enumerate_slice(-1, 0).unwrap();
        assert_eq!(s.basis.len(), 4); // x1 D_i
        // dim g_{0,-2} = 1, spanned by D1.
        let s = enumerate_slice(0, -2).unwrap();
        assert_eq!(s.basis.len(), 1);
        assert_eq!(s.basis[0].to_string(), "D1");
        // The lowest slice of g_r is S^r(C^4) D1.
        for r in 1..=3i64 {
            let s = enumerate_slice(r, 2 * r - 2).unwrap();
            let expected = ((r + 1) * (r + 2) * (r + 3) / 6) as usize;
            assert_eq!(s.basis.len(), expected, "r = {r}");
        }
    }

    #[test]
    fn weights_of_highest_vectors() {
        let w = weight_of(&highest_vector(-1)).unwrap();
        assert_eq!((w.a, w.b, w.c), (0, 0, 1));
        assert_eq!(w.d, Scalar::ratio(1, 2));
        let w = weight_of(&highest_vector(0)).unwrap();
        assert_eq!((w.a, w.b, w.c), (0, 0, 0));
        assert_eq!(w.d, Scalar::from_int(-2));
        let w = weight_of(&highest_vector(2)).unwrap();
        assert_eq!((w.a, w.b, w.c), (2, 0, 0));
        assert_eq!(w.d, Scalar::from_int(-3));
    }

    #[test]
    fn non_eigenvector_is_an_error() {
        // D1 + D5 mixes weights under x4 D4 - x5 D5.
        let v = E510Elt::from_even(
            VectorField::unit(X15, Var::X(1))
                .add(&VectorField::unit(X15, Var::X(5)))
                .unwrap(),
        )
        .unwrap();
        assert!(matches!(weight_of(&v), Err(Error::NotEigenvector(_))));
    }

    #[test]
    fn annihilation_checks() {
        for r in [-1, 0, 1, 2, 3] {
            assert!(annihilated_by_negative(&highest_vector(r)), "r = {r}");
        }
    }

    #[test]
    fn singular_absence_small_r() {
        for r in 1..=2 {
            let rep = singular_absence(r);
            assert!(rep.ok(), "r = {r}: {:?}", rep.failures);
        }
    }

    #[test]
    fn generation_for_small_windows() {
        let rep = generation_check(-1, 1);
        assert!(rep.ok(), "r=-1: {:?}", rep.failures.first());
        let rep = generation_check(1, 1);
        assert!(rep.ok(), "r=1: {:?}", rep.failures.first());
    }

    #[test]
    fn slice_bracket_additivity() {
        // ad of a fine-homogeneous psi image maps g_{r,k} into g_{r,k+d}.
        let gens = [
            ("sl4", {
                let mut e = crate::e16k16::E16Elt::zero();
                e.add_sl4(2, 3, 1, Scalar::one());
                psi(&e).unwrap()
            }),
            ("lam2", {
                let mut e = crate::e16k16::E16Elt::zero();
                e.add_lam2(2, 3, 0, Scalar::one());
                psi(&e).unwrap()
            }),
        ];
        for (label, g) in gens {
            let d = match degree_510(&g, &GradingType510::principal()) {
                Degree::Homogeneous(d) => d,
                other => panic!("{label}: {other:?}"),
            };
            for (r, k) in [(1i64, 1i64), (1, 2), (2, 3)] {
                let slice = enumerate_slice(r, k).unwrap();
                let target = enumerate_slice(r, k + d).unwrap();
                let mut span: SpanBuilder<E510Key> = SpanBuilder::new();
                for e in &target.basis {
                    span.insert(&e.coords());
                }
                for v in &slice.basis {
                    let w = bracket_e510(&g, v).unwrap();
                    if w.is_zero() {
                        continue;
                    }
                    assert!(
                        span.contains(&w.coords()),
                        "{label} maps ({r},{k}) outside ({r},{})",
                        k + d
                    );
                }
            }
        }
    }
}
