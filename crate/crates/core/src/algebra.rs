//! The algebra registry: each supported Lie algebra is a basis alphabet plus
//! a bracket rule on basis vectors, extended bilinearly.
//!
//! Gradings are by an integer (or half-integer, for the `Y` fields of `sv`)
//! degree; every bracket respects the grading and the Jacobi identity, which
//! the test suite checks exhaustively on windows rather than assuming.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;
use thiserror::Error;

use crate::freevec::FreeVector;
use crate::scalar::Scalar;

/// A tagged basis symbol.
///
/// `Y(k)` encodes the half-integer mode `r = k + 1/2`; `E(m, n)` encodes the
/// differential operator `t^m D^n` with `n >= 0`. The derived ordering
/// (family rank, then index data) fixes deterministic iteration everywhere.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BasisVector {
    L(i64),
    I(i64),
    Y(i64),
    E(i64, u32),
    /// Central charge of the `[L, L]` cocycle.
    CL,
    /// Central charge of the `[I, I]` cocycle.
    CI,
    /// Central charge of the mixed `[L, I]` cocycle.
    CLI,
    /// The single central charge of `virasoro` and `sv`.
    C,
}

pub type Element = FreeVector<BasisVector>;

/// Degrees are exact rationals; half-integers arise from the `Y` family.
pub type Degree = Scalar;

impl BasisVector {
    pub fn degree(&self) -> Degree {
        match self {
            BasisVector::L(m) | BasisVector::I(m) | BasisVector::E(m, _) => Scalar::from_int(*m),
            BasisVector::Y(k) => Scalar::from_int(*k) + Scalar::new(1, 2),
            BasisVector::CL | BasisVector::CI | BasisVector::CLI | BasisVector::C => Scalar::zero(),
        }
    }

    pub fn is_central_symbol(&self) -> bool {
        matches!(
            self,
            BasisVector::CL | BasisVector::CI | BasisVector::CLI | BasisVector::C
        )
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisVector::L(m) => write!(f, "L[{m}]"),
            BasisVector::I(m) => write!(f, "I[{m}]"),
            BasisVector::Y(k) => write!(f, "Y[{k}]"),
            BasisVector::E(m, n) => write!(f, "E[{m},{n}]"),
            BasisVector::CL => write!(f, "CL"),
            BasisVector::CI => write!(f, "CI"),
            BasisVector::CLI => write!(f, "CLI"),
            BasisVector::C => write!(f, "C"),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("basis vector {basis} is not admissible in algebra {algebra}")]
    InadmissibleBasis { basis: String, algebra: String },
    #[error("selector {selector} is not a central basis vector of {algebra}")]
    InvalidSelector { selector: String, algebra: String },
}

/// One of the registered Lie algebras.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Algebra {
    /// Centerless Virasoro: `[L_m, L_n] = (n - m) L_{m+n}`.
    Witt,
    /// Witt plus the central charge `C` with the cubic cocycle.
    Virasoro,
    /// Oscillator algebra on the `I` family with central charge `CI`.
    Heisenberg,
    /// Twisted Heisenberg-Virasoro algebra: `L`, `I` and the three central
    /// charges `CL`, `CI`, `CLI`.
    TwistedHv,
    /// Centerless twisted Heisenberg-Virasoro algebra (differential
    /// operators of order at most one).
    G1,
    /// The deformation family `[L_m, I_n] = (a + b m + n) I_{m+n}`.
    Wab { a: Scalar, b: Scalar },
    /// Schroedinger-Virasoro algebra with half-integer fields `Y`.
    Sv,
    /// Differential operators `t^m D^n`; `max_order` only bounds
    /// enumeration, brackets are closed without it.
    DiffOps { max_order: u32 },
}

impl Algebra {
    pub fn wab(a: Scalar, b: Scalar) -> Self {
        Algebra::Wab { a, b }
    }

    pub fn diffops(max_order: u32) -> Self {
        Algebra::DiffOps { max_order }
    }

    /// The selection-string identifier, e.g. `twisted-hv` or `wab:a=1,b=-2/3`.
    pub fn id(&self) -> String {
        match self {
            Algebra::Witt => "witt".into(),
            Algebra::Virasoro => "virasoro".into(),
            Algebra::Heisenberg => "heisenberg".into(),
            Algebra::TwistedHv => "twisted-hv".into(),
            Algebra::G1 => "g1".into(),
            Algebra::Wab { a, b } => format!("wab:a={a},b={b}"),
            Algebra::Sv => "sv".into(),
            Algebra::DiffOps { max_order } => format!("diffops:order={max_order}"),
        }
    }

    pub fn admissible(&self, b: &BasisVector) -> bool {
        use BasisVector::*;
        match self {
            Algebra::Witt => matches!(b, L(_)),
            Algebra::Virasoro => matches!(b, L(_) | C),
            Algebra::Heisenberg => matches!(b, I(_) | CI),
            Algebra::TwistedHv => matches!(b, L(_) | I(_) | CL | CI | CLI),
            Algebra::G1 | Algebra::Wab { .. } => matches!(b, L(_) | I(_)),
            Algebra::Sv => matches!(b, L(_) | I(_) | Y(_) | C),
            Algebra::DiffOps { .. } => matches!(b, E(_, _)),
        }
    }

    pub fn check_admissible(&self, b: &BasisVector) -> Result<(), AlgebraError> {
        if self.admissible(b) {
            Ok(())
        } else {
            Err(AlgebraError::InadmissibleBasis {
                basis: b.to_string(),
                algebra: self.id(),
            })
        }
    }

    pub fn check_element(&self, v: &Element) -> Result<(), AlgebraError> {
        for (b, _) in v.iter() {
            self.check_admissible(b)?;
        }
        Ok(())
    }

    pub fn degree(&self, b: &BasisVector) -> Result<Degree, AlgebraError> {
        self.check_admissible(b)?;
        Ok(b.degree())
    }

    /// The bracket of two basis vectors, as a canonical sparse element.
    pub fn bracket_basis(
        &self,
        x: &BasisVector,
        y: &BasisVector,
    ) -> Result<Element, AlgebraError> {
        self.check_admissible(x)?;
        self.check_admissible(y)?;
        use BasisVector::*;
        let out = match self {
            Algebra::Witt => match (x, y) {
                (L(m), L(n)) => witt_bracket(*m, *n),
                _ => unreachable!(),
            },
            Algebra::Virasoro => match (x, y) {
                (L(m), L(n)) => {
                    let mut v = witt_bracket(*m, *n);
                    v.add_term(C, virasoro_cocycle(*m, *n));
                    v
                }
                _ => Element::zero(), // C is central
            },
            Algebra::Heisenberg => match (x, y) {
                (I(m), I(n)) => heisenberg_bracket(*m, *n, CI),
                _ => Element::zero(),
            },
            Algebra::TwistedHv => match (x, y) {
                (L(m), L(n)) => {
                    let mut v = witt_bracket(*m, *n);
                    v.add_term(CL, virasoro_cocycle(*m, *n));
                    v
                }
                (I(m), I(n)) => heisenberg_bracket(*m, *n, CI),
                (L(m), I(n)) => twisted_li(*m, *n, false),
                (I(n), L(m)) => twisted_li(*m, *n, true),
                _ => Element::zero(),
            },
            Algebra::G1 => match (x, y) {
                (L(m), L(n)) => witt_bracket(*m, *n),
                (L(m), I(n)) => Element::term(I(m + n), Scalar::from_int(*n)),
                (I(n), L(m)) => Element::term(I(m + n), Scalar::from_int(-*n)),
                (I(_), I(_)) => Element::zero(),
                _ => unreachable!(),
            },
            Algebra::Wab { a, b } => match (x, y) {
                (L(m), L(n)) => witt_bracket(*m, *n),
                (L(m), I(n)) => wab_li(a, b, *m, *n, false),
                (I(n), L(m)) => wab_li(a, b, *m, *n, true),
                (I(_), I(_)) => Element::zero(),
                _ => unreachable!(),
            },
            Algebra::Sv => match (x, y) {
                (L(m), L(n)) => {
                    let mut v = witt_bracket(*m, *n);
                    v.add_term(C, virasoro_cocycle(*m, *n));
                    v
                }
                (L(m), I(n)) => Element::term(I(m + n), Scalar::from_int(*n)),
                (I(n), L(m)) => Element::term(I(m + n), Scalar::from_int(-*n)),
                (L(n), Y(k)) => sv_ly(*n, *k, false),
                (Y(k), L(n)) => sv_ly(*n, *k, true),
                // [Y_r, Y_s] = (s - r) I_{r+s}, with r = k + 1/2, s = j + 1/2
                (Y(k), Y(j)) => Element::term(I(k + j + 1), Scalar::from_int(j - k)),
                (I(_), I(_)) | (Y(_), I(_)) | (I(_), Y(_)) => Element::zero(),
                _ => Element::zero(), // C is central
            },
            Algebra::DiffOps { .. } => match (x, y) {
                (E(m, n), E(m1, n1)) => diffop_bracket(*m, *n, *m1, *n1),
                _ => unreachable!(),
            },
        };
        Ok(out)
    }

    /// Bilinear extension of [`bracket_basis`](Self::bracket_basis).
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        let mut out = Element::zero();
        for (bx, cx) in x.iter() {
            for (by, cy) in y.iter() {
                out.add_scaled(&(cx * cy), &self.bracket_basis(bx, by)?);
            }
        }
        Ok(out)
    }

    /// The exact central basis. For `twisted-hv` this is the paper ordering
    /// of the four-dimensional center.
    pub fn center_basis(&self) -> Vec<BasisVector> {
        use BasisVector::*;
        match self {
            Algebra::Witt => vec![],
            Algebra::Virasoro => vec![C],
            Algebra::Heisenberg => vec![I(0), CI],
            Algebra::TwistedHv => vec![I(0), CLI, CL, CI],
            Algebra::G1 => vec![I(0)],
            // I_{-a} commutes with everything iff b = 0 and a is integral.
            Algebra::Wab { a, b } => match (b.is_zero(), a.is_integer(), (-a).to_i64()) {
                (true, true, Some(k)) => vec![I(k)],
                _ => vec![],
            },
            Algebra::Sv => vec![I(0), C],
            Algebra::DiffOps { .. } => vec![E(0, 0)],
        }
    }

    pub fn is_central(&self, b: &BasisVector) -> bool {
        self.center_basis().contains(b)
    }

    /// Deterministic, duplicate-free enumeration of basis vectors with
    /// `|degree| <= window` (and order `<= max_order` for `diffops`).
    pub fn generators(&self, window: u32) -> Vec<BasisVector> {
        use BasisVector::*;
        let n = window as i64;
        let mut out = Vec::new();
        let ls = || (-n..=n).map(L);
        let is = || (-n..=n).map(I);
        match self {
            Algebra::Witt => out.extend(ls()),
            Algebra::Virasoro => {
                out.extend(ls());
                out.push(C);
            }
            Algebra::Heisenberg => {
                out.extend(is());
                out.push(CI);
            }
            Algebra::TwistedHv => {
                out.extend(ls());
                out.extend(is());
                out.extend([CL, CI, CLI]);
            }
            Algebra::G1 | Algebra::Wab { .. } => {
                out.extend(ls());
                out.extend(is());
            }
            Algebra::Sv => {
                out.extend(ls());
                out.extend(is());
                // |k + 1/2| <= n  <=>  -n <= k <= n - 1
                out.extend((-n..n).map(Y));
                out.push(C);
            }
            Algebra::DiffOps { max_order } => {
                for m in -n..=n {
                    for k in 0..=*max_order {
                        out.push(E(m, k));
                    }
                }
            }
        }
        out
    }
}

fn witt_bracket(m: i64, n: i64) -> Element {
    Element::term(BasisVector::L(m + n), Scalar::from_int(n - m))
}

/// `(m^3 - m)/12` when `m + n = 0`, else zero.
fn virasoro_cocycle(m: i64, n: i64) -> Scalar {
    if m + n == 0 {
        let m = BigInt::from(m);
        Scalar::from_bigint(&m * &m * &m - &m) * Scalar::new(1, 12)
    } else {
        Scalar::zero()
    }
}

/// `[I_m, I_n] = n delta_{m+n,0} c`.
fn heisenberg_bracket(m: i64, n: i64, charge: BasisVector) -> Element {
    if m + n == 0 {
        Element::term(charge, Scalar::from_int(n))
    } else {
        Element::zero()
    }
}

/// `[L_m, I_n] = n I_{m+n} + delta_{m+n,0} (m^2 - m) CLI`, possibly flipped.
fn twisted_li(m: i64, n: i64, flipped: bool) -> Element {
    let mut v = Element::term(BasisVector::I(m + n), Scalar::from_int(n));
    if m + n == 0 {
        let m = BigInt::from(m);
        v.add_term(BasisVector::CLI, Scalar::from_bigint(&m * &m - &m));
    }
    if flipped {
        -&v
    } else {
        v
    }
}

/// `[L_m, I_n] = (a + b m + n) I_{m+n}`, possibly flipped.
fn wab_li(a: &Scalar, b: &Scalar, m: i64, n: i64, flipped: bool) -> Element {
    let c = a + &(b * &Scalar::from_int(m)) + Scalar::from_int(n);
    let v = Element::term(BasisVector::I(m + n), c);
    if flipped {
        -&v
    } else {
        v
    }
}

/// `[L_n, Y_r] = (r - n/2) Y_{n+r}` with `r = k + 1/2`, possibly flipped.
fn sv_ly(n: i64, k: i64, flipped: bool) -> Element {
    let c = Scalar::new(2 * k + 1 - n, 2);
    let v = Element::term(BasisVector::Y(n + k), c);
    if flipped {
        -&v
    } else {
        v
    }
}

/// Eq-style bracket of `t^m D^n` with `t^{m1} D^{n1}`: total order drops by
/// at least one, so closure needs no order cap.
fn diffop_bracket(m: i64, n: u32, m1: i64, n1: u32) -> Element {
    let mut out = Element::zero();
    let bm = BigInt::from(m);
    let bm1 = BigInt::from(m1);
    let mut pow_m1 = BigInt::one();
    for i in 1..=n {
        pow_m1 *= &bm1;
        let c = binomial(BigInt::from(n), BigInt::from(i)) * &pow_m1;
        out.add_term(BasisVector::E(m + m1, n + n1 - i), Scalar::from_bigint(c));
    }
    let mut pow_m = BigInt::one();
    for j in 1..=n1 {
        pow_m *= &bm;
        let c = binomial(BigInt::from(n1), BigInt::from(j)) * &pow_m;
        out.add_term(BasisVector::E(m + m1, n + n1 - j), -Scalar::from_bigint(c));
    }
    out
}

impl FromStr for Algebra {
    type Err = String;

    /// Parses the selection grammar
    /// `witt | virasoro | heisenberg | twisted-hv | g1 | sv | wab:a=<rat>,b=<rat> | diffops:order=<int>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "witt" => return Ok(Algebra::Witt),
            "virasoro" => return Ok(Algebra::Virasoro),
            "heisenberg" => return Ok(Algebra::Heisenberg),
            "twisted-hv" => return Ok(Algebra::TwistedHv),
            "g1" => return Ok(Algebra::G1),
            "sv" => return Ok(Algebra::Sv),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("wab:") {
            let mut a = None;
            let mut b = None;
            for part in rest.split(',') {
                let (key, val) = part
                    .split_once('=')
                    .ok_or_else(|| format!("expected key=value in {part:?}"))?;
                let val: Scalar = val.parse().map_err(|e| format!("bad rational: {e}"))?;
                match key.trim() {
                    "a" => a = Some(val),
                    "b" => b = Some(val),
                    other => return Err(format!("unknown wab parameter {other:?}")),
                }
            }
            return Ok(Algebra::Wab {
                a: a.ok_or("wab requires a=<rat>")?,
                b: b.ok_or("wab requires b=<rat>")?,
            });
        }
        if let Some(rest) = s.strip_prefix("diffops:") {
            let val = rest
                .strip_prefix("order=")
                .ok_or("diffops requires order=<int>")?;
            let max_order: u32 = val.trim().parse().map_err(|_| format!("bad order {val:?}"))?;
            return Ok(Algebra::DiffOps { max_order });
        }
        Err(format!("unknown algebra {s:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BasisVector::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn twisted_hv_paper_brackets() {
        let alg = Algebra::TwistedHv;
        assert_eq!(
            alg.bracket_basis(&L(2), &L(-2)).unwrap(),
            Element::from_terms([(L(0), s(-4)), (CL, Scalar::new(1, 2))])
        );
        assert_eq!(
            alg.bracket_basis(&L(-1), &I(1)).unwrap(),
            Element::from_terms([(I(0), s(1)), (CLI, s(2))])
        );
        assert_eq!(
            alg.bracket_basis(&I(1), &I(-1)).unwrap(),
            Element::term(CI, s(-1))
        );
    }

    #[test]
    fn diffop_paper_brackets() {
        let alg = Algebra::diffops(3);
        // [D^2, t^m] = m^2 t^m + 2m t^m D
        for m in -3..=3i64 {
            assert_eq!(
                alg.bracket_basis(&E(0, 2), &E(m, 0)).unwrap(),
                Element::from_terms([(E(m, 0), s(m * m)), (E(m, 1), s(2 * m))])
            );
        }
        // [t^n D^2, t^{-n} D] = -3n D^2 + n^2 D
        for n in 1..=5i64 {
            assert_eq!(
                alg.bracket_basis(&E(n, 2), &E(-n, 1)).unwrap(),
                Element::from_terms([(E(0, 2), s(-3 * n)), (E(0, 1), s(n * n))])
            );
        }
    }

    #[test]
    fn sv_brackets() {
        let alg = Algebra::Sv;
        // [Y_r, Y_s] = (s - r) I_{r+s}
        assert_eq!(
            alg.bracket_basis(&Y(2), &Y(-1)).unwrap(),
            Element::term(I(2), s(-3))
        );
        // [L_n, Y_r] = (r - n/2) Y_{n+r}: n = 1, k = 0 => r = 1/2, coeff 0
        assert!(alg.bracket_basis(&L(1), &Y(0)).unwrap().is_zero());
        assert_eq!(
            alg.bracket_basis(&L(2), &Y(0)).unwrap(),
            Element::term(Y(2), Scalar::new(-1, 2))
        );
    }

    #[test]
    fn self_bracket_vanishes() {
        for alg in [Algebra::TwistedHv, Algebra::Sv, Algebra::diffops(2)] {
            for g in alg.generators(3) {
                assert!(alg.bracket_basis(&g, &g).unwrap().is_zero(), "{g} in {}", alg.id());
            }
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(Algebra::TwistedHv.degree(&CLI).unwrap(), s(0));
        assert_eq!(Algebra::Sv.degree(&Y(-1)).unwrap(), Scalar::new(-1, 2));
        assert_eq!(Algebra::diffops(3).degree(&E(-3, 2)).unwrap(), s(-3));
        assert!(Algebra::Witt.degree(&Y(3)).is_err());
    }

    #[test]
    fn centers() {
        assert_eq!(
            Algebra::TwistedHv.center_basis(),
            vec![I(0), CLI, CL, CI]
        );
        assert!(Algebra::Witt.center_basis().is_empty());
        assert_eq!(Algebra::G1.center_basis(), vec![I(0)]);
        assert_eq!(Algebra::Sv.center_basis(), vec![I(0), C]);
        assert_eq!(Algebra::diffops(1).center_basis(), vec![E(0, 0)]);
        // W(a, 0) with integral a has the single central mode I_{-a}
        assert_eq!(Algebra::wab(s(2), s(0)).center_basis(), vec![I(-2)]);
        assert!(Algebra::wab(s(2), s(1)).center_basis().is_empty());
        assert!(Algebra::wab(Scalar::new(1, 2), s(0)).center_basis().is_empty());
    }

    #[test]
    fn generator_windows() {
        assert_eq!(Algebra::Witt.generators(1), vec![L(-1), L(0), L(1)]);
        assert_eq!(
            Algebra::TwistedHv.generators(0),
            vec![L(0), I(0), CL, CI, CLI]
        );
        let sv = Algebra::Sv.generators(1);
        assert_eq!(
            sv,
            vec![L(-1), L(0), L(1), I(-1), I(0), I(1), Y(-1), Y(0), C]
        );
        let d = Algebra::diffops(1).generators(1);
        assert_eq!(d.len(), 6);
    }

    #[test]
    fn inadmissible_is_rejected() {
        let err = Algebra::Witt.bracket_basis(&L(1), &I(2)).unwrap_err();
        assert!(matches!(err, AlgebraError::InadmissibleBasis { .. }));
    }

    #[test]
    fn selection_grammar() {
        for src in ["witt", "virasoro", "heisenberg", "twisted-hv", "g1", "sv"] {
            assert_eq!(Algebra::from_str(src).unwrap().id(), src);
        }
        let wab = Algebra::from_str("wab:a=1/2,b=-3").unwrap();
        assert_eq!(wab, Algebra::wab(Scalar::new(1, 2), s(-3)));
        let d = Algebra::from_str("diffops:order=4").unwrap();
        assert_eq!(d, Algebra::diffops(4));
        assert!(Algebra::from_str("wab:a=1").is_err());
        assert!(Algebra::from_str("so3").is_err());
    }
}
