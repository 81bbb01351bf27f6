//! The 64-dimensional exterior algebra on six odd generators, in two
//! coordinate systems:
//!
//! * xi/eta coordinates with canonical generator order
//!   xi2 < xi3 < xi4 < eta2 < eta3 < eta4 (bits 0..5). The alternative
//!   naming xi1..xi3/eta1..eta3 is a pure relabeling with eta1 = xi4 and
//!   xi1 = eta4.
//! * rho coordinates rho1 < ... < rho6 (bits 0..5), related by
//!   rho_j = (xi_j + eta_j)/sqrt2, rho_{j+3} = (xi_j - eta_j)/sqrt(-2)
//!   in the 1..3 naming.
//!
//! Monomials are stored sorted, as bitmasks, with all reordering signs
//! absorbed into coefficients. Signs come from inversion counting on
//! masks, unit-tested against a naive list-reordering oracle.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::join_signed;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Coord {
    XiEta,
    Rho,
}

impl Coord {
    pub fn name(self) -> &'static str {
        match self {
            Coord::XiEta => "xi/eta",
            Coord::Rho => "rho",
        }
    }
}

pub const FULL_MASK: u8 = 0b11_1111;

/// Names in canonical bit order.
const XIETA_NAMES: [&str; 6] = ["xi2", "xi3", "xi4", "eta2", "eta3", "eta4"];
/// The same generators in the 1..3 naming of the contact bracket
/// (eta1 = xi4, xi1 = eta4).
const XIETA_NAMES_123: [&str; 6] = ["xi2", "xi3", "eta1", "eta2", "eta3", "xi1"];
const RHO_NAMES: [&str; 6] = ["rho1", "rho2", "rho3", "rho4", "rho5", "rho6"];

pub fn gen_name(coord: Coord, bit: u8) -> &'static str {
    match coord {
        Coord::XiEta => XIETA_NAMES[bit as usize],
        Coord::Rho => RHO_NAMES[bit as usize],
    }
}

/// Sign of wedging two sorted masks: 0 when they intersect, otherwise the
/// parity of the number of inversions between them.
pub fn wedge_sign(a: u8, b: u8) -> i8 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    for i in 0..6 {
        if a & (1 << i) != 0 {
            inversions += (b & ((1 << i) - 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign and mask obtained by sorting a sequence of distinct generator bits.
/// Returns sign 0 when the sequence repeats a generator.
pub fn seq_sort_sign(seq: &[u8]) -> (i8, u8) {
    let mut mask = 0u8;
    let mut sign = 1i8;
    for (i, &b) in seq.iter().enumerate() {
        if mask & (1 << b) != 0 {
            return (0, 0);
        }
        // Count earlier entries larger than b: each is one inversion.
        let larger = seq[..i].iter().filter(|&&a| a > b).count();
        if larger % 2 == 1 {
            sign = -sign;
        }
        mask |= 1 << b;
    }
    (sign, mask)
}

/// Odd left derivative on a monomial: the sign collected by moving the
/// generator to the front. `None` when the generator is absent.
pub fn partial_mono(mask: u8, bit: u8) -> Option<(i8, u8)> {
    if mask & (1 << bit) == 0 {
        return None;
    }
    let lower = (mask & ((1 << bit) - 1)).count_ones();
    let sign = if lower % 2 == 0 { 1 } else { -1 };
    Some((sign, mask & !(1 << bit)))
}

/// rho_I* is the unique monomial with rho_I rho_I* = rho1...rho6.
pub fn star_mono(mask: u8) -> (i8, u8) {
    let comp = !mask & FULL_MASK;
    (wedge_sign(mask, comp), comp)
}

/// Bar of a xi/eta generator bit: xi_i <-> eta_i.
fn bar_bit(bit: u8) -> u8 {
    (bit + 3) % 6
}

/// xi_I^# is the unique monomial with xi_{Ibar} xi_I^# = xi2 xi3 xi4 eta2
/// eta3 eta4, computed on the sorted representative of the mask.
pub fn sharp_mono(mask: u8) -> (i8, u8) {
    // Barred sequence of the sorted monomial, then sort it again.
    let seq: Vec<u8> = (0..6).filter(|&b| mask & (1 << b) != 0).map(bar_bit).collect();
    let (s1, mbar) = seq_sort_sign(&seq);
    debug_assert!(s1 != 0);
    let comp = !mbar & FULL_MASK;
    (s1 * wedge_sign(mbar, comp), comp)
}

/// An element of the exterior algebra: monomial mask -> coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GrassElt {
    pub coord: Coord,
    terms: BTreeMap<u8, Scalar>,
}

impl GrassElt {
    pub fn zero(coord: Coord) -> Self {
        GrassElt {
            coord,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(coord: Coord) -> Self {
        GrassElt::monomial(coord, 0, Scalar::one())
    }

    pub fn monomial(coord: Coord, mask: u8, c: Scalar) -> Self {
        assert!(mask <= FULL_MASK);
        let mut e = GrassElt::zero(coord);
        if !c.is_zero() {
            e.terms.insert(mask, c);
        }
        e
    }

    pub fn generator(coord: Coord, bit: u8) -> Self {
        GrassElt::monomial(coord, 1 << bit, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u8, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mask: u8) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, mask: u8, c: Scalar) {
        let entry = self.terms.entry(mask).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &GrassElt) -> Result<GrassElt> {
        self.check_coord(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> GrassElt {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> GrassElt {
        let mut out = GrassElt::zero(self.coord);
        if s.is_zero() {
            return out;
        }
        for (m, c) in self.terms.iter() {
            out.terms.insert(*m, c * s);
        }
        out
    }

    fn check_coord(&self, other: &GrassElt) -> Result<()> {
        if self.coord != other.coord {
            return Err(Error::CoordMismatch(
                self.coord.name().into(),
                other.coord.name().into(),
            ));
        }
        Ok(())
    }

    /// True when all monomials share one parity; `parity()` then reports it.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| m.count_ones() as u8 % 2);
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }
}

pub fn gr_wedge(a: &GrassElt, b: &GrassElt) -> Result<GrassElt> {
    a.check_coord(b)?;
    let mut out = GrassElt::zero(a.coord);
    for (ma, ca) in a.terms.iter() {
        for (mb, cb) in b.terms.iter() {
            let s = wedge_sign(*ma, *mb);
            if s == 0 {
                continue;
            }
            let mut c = ca * cb;
            if s < 0 {
                c = -c;
            }
            out.add_term(ma | mb, c);
        }
    }
    Ok(out)
}

pub fn gr_partial(a: &GrassElt, bit: u8) -> GrassElt {
    let mut out = GrassElt::zero(a.coord);
    for (m, c) in a.terms.iter() {
        if let Some((s, m2)) = partial_mono(*m, bit) {
            out.add_term(m2, if s < 0 { -c.clone() } else { c.clone() });
        }
    }
    out
}

/// Linear extension of the monomial * map (native to rho coordinates;
/// other inputs are converted, starred, and converted back).
pub fn gr_star(a: &GrassElt) -> GrassElt {
    if a.coord != Coord::Rho {
        let in_rho = gr_star(&gr_change_coords(a, Coord::Rho));
        return gr_change_coords(&in_rho, a.coord);
    }
    let mut out = GrassElt::zero(Coord::Rho);
    for (m, c) in a.terms.iter() {
        let (s, m2) = star_mono(*m);
        out.add_term(m2, if s < 0 { -c.clone() } else { c.clone() });
    }
    out
}

/// Linear extension of the monomial # map (native to xi/eta coordinates).
pub fn gr_sharp(a: &GrassElt) -> GrassElt {
    if a.coord != Coord::XiEta {
        let in_xe = gr_sharp(&gr_change_coords(a, Coord::XiEta));
        return gr_change_coords(&in_xe, a.coord);
    }
    let mut out = GrassElt::zero(Coord::XiEta);
    for (m, c) in a.terms.iter() {
        let (s, m2) = sharp_mono(*m);
        out.add_term(m2, if s < 0 { -c.clone() } else { c.clone() });
    }
    out
}

/// Image of a single generator under the coordinate change, as a list of
/// (target bit, coefficient).
fn gen_image(coord_from: Coord, bit: u8) -> Vec<(u8, Scalar)> {
    let half_sqrt2 = &Scalar::ratio(1, 2) * &Scalar::sqrt2(); // 1/sqrt2
    match coord_from {
        // xi_j = (rho_j + i rho_{j+3})/sqrt2, eta_j = (rho_j - i rho_{j+3})/sqrt2,
        // in the 1..3 naming; our bits list them as xi2 xi3 xi4 eta2 eta3 eta4
        // with xi4 = eta1 and eta4 = xi1.
        Coord::XiEta => {
            let (j, sign_i) = match bit {
                0 => (2, 1),  // xi2
                1 => (3, 1),  // xi3
                2 => (1, -1), // xi4 = eta1
                3 => (2, -1), // eta2
                4 => (3, -1), // eta3
                5 => (1, 1),  // eta4 = xi1
                _ => unreachable!(),
            };
            let i_term = if sign_i > 0 {
                &half_sqrt2 * &Scalar::i()
            } else {
                -(&half_sqrt2 * &Scalar::i())
            };
            vec![(j - 1, half_sqrt2.clone()), (j + 2, i_term)]
        }
        // rho_j = (xi_j + eta_j)/sqrt2, rho_{j+3} = (xi_j - eta_j)/sqrt(-2),
        // with 1/sqrt(-2) = -i/sqrt2.
        Coord::Rho => {
            let (xi_bit, eta_bit, j_low) = match bit {
                0 => (5, 2, true),  // rho1: xi1 = eta4(bit5), eta1 = xi4(bit2)
                1 => (0, 3, true),  // rho2
                2 => (1, 4, true),  // rho3
                3 => (5, 2, false), // rho4
                4 => (0, 3, false), // rho5
                5 => (1, 4, false), // rho6
                _ => unreachable!(),
            };
            if j_low {
                vec![(xi_bit, half_sqrt2.clone()), (eta_bit, half_sqrt2)]
            } else {
                let c = -(&half_sqrt2 * &Scalar::i());
                vec![(xi_bit, c.clone()), (eta_bit, -c)]
            }
        }
    }
}

/// The algebra isomorphism between the two coordinate systems.
pub fn gr_change_coords(a: &GrassElt, to: Coord) -> GrassElt {
    if a.coord == to {
        return a.clone();
    }
    let mut out = GrassElt::zero(to);
    for (m, c) in a.terms.iter() {
        // Expand the sorted monomial generator by generator.
        let mut acc = GrassElt::monomial(to, 0, c.clone());
        for b in 0..6 {
            if m & (1 << b) == 0 {
                continue;
            }
            let mut img = GrassElt::zero(to);
            for (tb, tc) in gen_image(a.coord, b) {
                img.add_term(1 << tb, tc);
            }
            acc = gr_wedge(&acc, &img).expect("same coord");
        }
        for (m2, c2) in acc.terms {
            out.add_term(m2, c2);
        }
    }
    out
}

impl fmt::Display for GrassElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| fmt_mono_with_coeff(self.coord, *m, c, false))
            .collect();
        write!(f, "{}", join_signed(&parts))
    }
}

pub fn fmt_mono(coord: Coord, mask: u8, naming_123: bool) -> String {
    if mask == 0 {
        return "1".into();
    }
    let names: Vec<&str> = (0..6)
        .filter(|&b| mask & (1 << b) != 0)
        .map(|b| match (coord, naming_123) {
            (Coord::XiEta, true) => XIETA_NAMES_123[b as usize],
            _ => gen_name(coord, b),
        })
        .collect();
    names.join("*")
}

pub fn fmt_mono_with_coeff(coord: Coord, mask: u8, c: &Scalar, naming_123: bool) -> String {
    let mono = fmt_mono(coord, mask, naming_123);
    if mask == 0 {
        return crate::series::coeff_string(c, true);
    }
    let prefix = crate::series::coeff_string(c, false);
    if prefix.is_empty() {
        mono
    } else {
        format!("{prefix}*{mono}")
    }
}
