//! Coboundary cobrackets, the Yang-Baxter expression and the Lie-bialgebra
//! axiom checkers.
//!
//! The infinite quantifiers of the axioms are discharged on windows: a PASS
//! is window-evidence over all basis generators with `|degree| <= N`, except
//! where an identity like `c(r) = 0` closes the question outright.

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraError, BasisVector};
use crate::expr::{print_tensor2, print_tensor3};
use crate::rules::{LinearRule, RuleError};
use crate::scalar::Scalar;
use crate::tensor::{act_basis, antisym_split, cyclic_sum, twist, Pair, Tensor2, Tensor3, TensorKey};

const MAX_WITNESSES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub input: String,
    pub residual: String,
}

/// The report of one windowed check; the schema shared with the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub algebra: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<u32>,
    pub status: Status,
    pub witnesses: Vec<Witness>,
}

impl Verdict {
    fn new(check: &str, algebra: &Algebra, window: Option<u32>, witnesses: Vec<Witness>) -> Self {
        Verdict {
            check: check.into(),
            algebra: algebra.id(),
            window,
            status: if witnesses.is_empty() { Status::Pass } else { Status::Fail },
            witnesses,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn push_witness(ws: &mut Vec<Witness>, input: String, residual: String) {
    if ws.len() < MAX_WITNESSES {
        ws.push(Witness { input, residual });
    }
}

/// The coboundary rule `Delta_r : x -> x . r`.
pub fn delta_r(alg: &Algebra, r: &Tensor2) -> LinearRule<Pair> {
    let r = r.clone();
    let label = format!("delta_r({})", print_tensor2(&r));
    LinearRule::closed(alg.clone(), label, move |alg, x| {
        Ok(act_basis(alg, x, &r)?)
    })
}

/// The Yang-Baxter expression
/// `c(r) = [r12, r13] + [r12, r23] + [r13, r23]` in its expanded form
/// `sum [a_i,a_j] (x) b_i (x) b_j + sum a_i (x) [b_i,a_j] (x) b_j
///  + sum a_i (x) a_j (x) [b_i,b_j]`.
pub fn c_of_r(alg: &Algebra, r: &Tensor2) -> Result<Tensor3, AlgebraError> {
    let terms: Vec<(&Pair, &Scalar)> = r.iter().collect();
    let mut out = Tensor3::zero();
    for ((ai, bi), ci) in &terms {
        for ((aj, bj), cj) in &terms {
            let c = *ci * *cj;
            for (s, k) in alg.bracket_basis(ai, aj)?.iter() {
                out.add_term((*s, *bi, *bj), &c * k);
            }
            for (s, k) in alg.bracket_basis(bi, aj)?.iter() {
                out.add_term((*ai, *s, *bj), &c * k);
            }
            for (s, k) in alg.bracket_basis(bi, bj)?.iter() {
                out.add_term((*ai, *aj, *s), &c * k);
            }
        }
    }
    Ok(out)
}

/// PASS iff `c(r)` is the zero tensor.
pub fn check_cybe(alg: &Algebra, r: &Tensor2) -> Result<Verdict, AlgebraError> {
    let c = c_of_r(alg, r)?;
    let mut ws = Vec::new();
    if !c.is_zero() {
        push_witness(&mut ws, print_tensor2(r), print_tensor3(&c));
    }
    Ok(Verdict::new("cybe", alg, None, ws))
}

/// PASS iff `x . c(r) = 0` for every generator with `|degree| <= window`.
pub fn check_mcybe(alg: &Algebra, r: &Tensor2, window: u32) -> Result<Verdict, AlgebraError> {
    let c = c_of_r(alg, r)?;
    let mut ws = Vec::new();
    for x in alg.generators(window) {
        let xc = act_basis(alg, &x, &c)?;
        if !xc.is_zero() {
            push_witness(&mut ws, x.to_string(), print_tensor3(&xc));
        }
    }
    Ok(Verdict::new("mcybe", alg, Some(window), ws))
}

/// `(1 (x) rule) T` for an arity-2-valued rule, applied to the second leg.
pub fn one_tensor_rule(rule: &LinearRule<Pair>, t: &Tensor2) -> Result<Tensor3, RuleError> {
    let mut out = Tensor3::zero();
    for ((a, b), c) in t.iter() {
        for ((p, q), k) in rule.eval_basis(b)?.iter() {
            out.add_term((*a, *p, *q), c * k);
        }
    }
    Ok(out)
}

/// The co-Jacobi sum `(1 + xi + xi^2) (1 (x) rule) rule(x)`.
pub fn co_jacobiator(rule: &LinearRule<Pair>, x: &BasisVector) -> Result<Tensor3, RuleError> {
    let dx = rule.eval_basis(x)?;
    Ok(cyclic_sum(&one_tensor_rule(rule, &dx)?))
}

fn cocycle_residuals<K: TensorKey + 'static>(
    rule: &LinearRule<K>,
    window: u32,
    print: impl Fn(&crate::freevec::FreeVector<K>) -> String,
) -> Result<Vec<Witness>, RuleError> {
    let alg = rule.algebra().clone();
    let gens = alg.generators(window);
    let mut ws = Vec::new();
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            let lhs = rule.eval(&alg.bracket_basis(x, y)?)?;
            let xphi = act_basis(&alg, x, &rule.eval_basis(y)?)?;
            let yphi = act_basis(&alg, y, &rule.eval_basis(x)?)?;
            let residual = &lhs - &(&xphi - &yphi);
            if !residual.is_zero() {
                push_witness(
                    &mut ws,
                    format!("x={x}, y={y}"),
                    print(&residual),
                );
            }
        }
    }
    Ok(ws)
}

/// The 1-cocycle identity `phi([x,y]) = x . phi(y) - y . phi(x)` on all
/// window pairs, for a rule valued in the algebra itself.
pub fn check_derivation1(rule: &LinearRule<BasisVector>, window: u32) -> Result<Verdict, RuleError> {
    let ws = cocycle_residuals(rule, window, |v| v.to_string())?;
    Ok(Verdict::new("derivation", rule.algebra(), Some(window), ws))
}

/// Same identity for tensor-valued rules.
pub fn check_derivation(rule: &LinearRule<Pair>, window: u32) -> Result<Verdict, RuleError> {
    let ws = cocycle_residuals(rule, window, print_tensor2)?;
    Ok(Verdict::new("derivation", rule.algebra(), Some(window), ws))
}

/// The compatibility axiom of a cobracket; the same identity as
/// [`check_derivation`], stated on the candidate cobracket.
pub fn check_compatibility(rule: &LinearRule<Pair>, window: u32) -> Result<Verdict, RuleError> {
    let ws = cocycle_residuals(rule, window, print_tensor2)?;
    Ok(Verdict::new("compatibility", rule.algebra(), Some(window), ws))
}

/// The Lie-coalgebra axioms: every image antisymmetric, and the co-Jacobi
/// sum vanishing, on all window generators.
pub fn check_coalgebra(rule: &LinearRule<Pair>, window: u32) -> Result<Verdict, RuleError> {
    let alg = rule.algebra().clone();
    let mut ws = Vec::new();
    for x in alg.generators(window) {
        let dx = rule.eval_basis(&x)?;
        let sym = &dx + &twist(&dx);
        if !sym.is_zero() {
            push_witness(&mut ws, format!("antisymmetry at {x}"), print_tensor2(&sym));
        }
        let jac = co_jacobiator(rule, &x)?;
        if !jac.is_zero() {
            push_witness(&mut ws, format!("co-Jacobi at {x}"), print_tensor3(&jac));
        }
    }
    Ok(Verdict::new("coalgebra", rule.algebra(), Some(window), ws))
}

/// The aggregated bialgebra verdict with classification tags.
#[derive(Clone, Debug, Serialize)]
pub struct BialgebraVerdict {
    pub check: String,
    pub algebra: String,
    pub window: u32,
    pub status: Status,
    pub tags: Vec<String>,
    pub axioms: Vec<Verdict>,
}

impl BialgebraVerdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn axiom(&self, name: &str) -> Option<&Verdict> {
        self.axioms.iter().find(|v| v.check == name)
    }
}

/// Runs compatibility and the coalgebra axioms on the window; when the
/// cobracket is presented with an `r` part, also checks CYBE/MCYBE and
/// classifies coboundary/triangular against that `r`.
pub fn verdict_bialgebra(
    rule: &LinearRule<Pair>,
    r: Option<&Tensor2>,
    window: u32,
) -> Result<BialgebraVerdict, RuleError> {
    let alg = rule.algebra().clone();
    let mut axioms = vec![
        check_compatibility(rule, window)?,
        check_coalgebra(rule, window)?,
    ];
    let mut tags = Vec::new();
    if axioms[0].passed() {
        tags.push("cocycle".to_string());
    }
    if axioms[1].passed() {
        tags.push("coalgebra".to_string());
    }
    let mut coboundary = false;
    let mut cybe_pass = false;
    if let Some(r) = r {
        let cybe = check_cybe(&alg, r)?;
        cybe_pass = cybe.passed();
        axioms.push(cybe);
        axioms.push(check_mcybe(&alg, r, window)?);
        // coboundary means the rule agrees with Delta_r on the window
        let dr = delta_r(&alg, r);
        coboundary = alg
            .generators(window)
            .iter()
            .try_fold(true, |acc, b| -> Result<bool, RuleError> {
                Ok(acc && rule.eval_basis(b)? == dr.eval_basis(b)?)
            })?;
    }
    if coboundary {
        tags.push("coboundary".to_string());
        if cybe_pass {
            tags.push("triangular".to_string());
        }
    } else {
        tags.push("non-coboundary".to_string());
    }
    let overall = if axioms[0].passed() && axioms[1].passed() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(BialgebraVerdict {
        check: "bialgebra".into(),
        algebra: alg.id(),
        window,
        status: overall,
        tags,
        axioms,
    })
}

/// `Delta_r` with the antisymmetric part of a split tensor; convenience for
/// callers holding a not-yet-reduced `r`.
pub fn antisymmetrize(r: &Tensor2) -> Tensor2 {
    antisym_split(r).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_element, parse_tensor2, parse_tensor3};
    use crate::rules::{chi_family, rho_family, FamilyParams};
    use crate::tensor::wedge;
    use BasisVector::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn thv() -> Algebra {
        Algebra::TwistedHv
    }

    fn t2(src: &str, alg: &Algebra) -> Tensor2 {
        parse_tensor2(src, alg).unwrap()
    }

    #[test]
    fn delta_r_examples() {
        let alg = thv();
        let r = t2("L[0] (x) I[1] - I[1] (x) L[0]", &alg);
        let rule = delta_r(&alg, &r);
        // hand-expanded four-term Leibniz value
        let want = t2(
            "-2 L[2] (x) I[1] + L[0] (x) I[3] - I[3] (x) L[0] + 2 I[1] (x) L[2]",
            &alg,
        );
        assert_eq!(rule.eval_basis(&L(2)).unwrap(), want);
        // central arguments and central r are killed
        assert!(rule.eval_basis(&CL).unwrap().is_zero());
        let central = delta_r(&alg, &Tensor2::basis((CL, CI)));
        for b in alg.generators(3) {
            assert!(central.eval_basis(&b).unwrap().is_zero());
        }
    }

    #[test]
    fn c_of_r_frozen_values() {
        let witt = Algebra::Witt;
        let r = t2("L[0] (x) L[1] - L[1] (x) L[0]", &witt);
        assert!(c_of_r(&witt, &r).unwrap().is_zero());

        let r = t2("L[1] (x) L[2] - L[2] (x) L[1]", &witt);
        // hand-expanded six-term value
        let want = parse_tensor3(
            "L[3] (x) L[1] (x) L[2] - L[3] (x) L[2] (x) L[1] \
             - L[1] (x) L[3] (x) L[2] + L[2] (x) L[3] (x) L[1] \
             + L[1] (x) L[2] (x) L[3] - L[2] (x) L[1] (x) L[3]",
            &witt,
        )
        .unwrap();
        assert_eq!(c_of_r(&witt, &r).unwrap(), want);

        assert!(c_of_r(&thv(), &Tensor2::basis((CL, CI))).unwrap().is_zero());
    }

    #[test]
    fn cybe_and_mcybe() {
        let witt = Algebra::Witt;
        let good = t2("L[0] (x) L[1] - L[1] (x) L[0]", &witt);
        assert!(check_cybe(&witt, &good).unwrap().passed());
        assert!(check_mcybe(&witt, &good, 6).unwrap().passed());
        assert!(check_cybe(&witt, &Tensor2::zero()).unwrap().passed());

        let bad = t2("L[1] (x) L[2] - L[2] (x) L[1]", &witt);
        let v = check_cybe(&witt, &bad).unwrap();
        assert!(!v.passed());
        assert_eq!(v.witnesses.len(), 1);
        let v = check_mcybe(&witt, &bad, 2).unwrap();
        assert!(!v.passed());
        // L[0] scales the degree-6 residual by 6
        let c = c_of_r(&witt, &bad).unwrap();
        assert_eq!(act_basis(&witt, &L(0), &c).unwrap(), c.scale(&s(6)));

        let central = Tensor2::basis((CL, CI));
        assert!(check_mcybe(&thv(), &central, 4).unwrap().passed());
    }

    #[test]
    fn quadratic_scaling() {
        let alg = thv();
        let r = t2("L[1] (x) I[-2] - 2 I[0] (x) L[3]", &alg);
        let lam = Scalar::new(-3, 7);
        let lhs = c_of_r(&alg, &r.scale(&lam)).unwrap();
        let rhs = c_of_r(&alg, &r).unwrap().scale(&(&lam * &lam));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivation_checker() {
        // the rho family is a derivation; a quadratic-looking rule is not
        let mut p = FamilyParams::default();
        p.alpha = s(1);
        p.z1 = CI;
        let rho = rho_family(p).unwrap();
        assert!(check_derivation(&rho, 6).unwrap().passed());

        let zero = LinearRule::<Pair>::zero(thv());
        assert!(check_derivation(&zero, 4).unwrap().passed());

        let sq = LinearRule::closed(Algebra::Witt, "square", |_, b| {
            Ok(match b {
                L(m) => Tensor2::basis((L(*m), L(*m))),
                _ => Tensor2::zero(),
            })
        });
        let v = check_derivation(&sq, 2).unwrap();
        assert!(!v.passed());
        assert!(v.witnesses[0].input.contains("x="));
    }

    #[test]
    fn chi_is_a_derivation_into_the_adjoint_module() {
        let chi = chi_family(s(2), s(-1), Scalar::new(1, 3));
        assert!(check_derivation1(&chi, 6).unwrap().passed());
    }

    #[test]
    fn hand_checked_rho_cocycle_instance() {
        // at (L_1, L_{-1}) both sides equal -2 CI (x) CLI for alpha=1, z1=CI
        let alg = thv();
        let mut p = FamilyParams::default();
        p.alpha = s(1);
        p.z1 = CI;
        let rho = rho_family(p).unwrap();
        let lhs = rho.eval(&alg.bracket_basis(&L(1), &L(-1)).unwrap()).unwrap();
        let rhs = &act_basis(&alg, &L(1), &rho.eval_basis(&L(-1)).unwrap()).unwrap()
            - &act_basis(&alg, &L(-1), &rho.eval_basis(&L(1)).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, Tensor2::term((CI, CLI), s(-2)));
    }

    #[test]
    fn coalgebra_checker() {
        let alg = thv();
        // sigma in D0 at rational parameters, selectors on the CI slice
        let p = FamilyParams {
            alpha: s(2),
            alpha_dag: s(-2),
            beta: Scalar::new(1, 2),
            beta_dag: Scalar::new(-1, 2),
            gamma: s(-1),
            gamma_dag: s(1),
            z1: CI,
            z1_dag: CI,
            w1: CI,
            w1_dag: CI,
        };
        assert!(p.is_d0());
        let sigma = rho_family(p).unwrap();
        assert!(check_coalgebra(&sigma, 6).unwrap().passed());

        // Delta_r for a CYBE solution
        let r = t2("L[0] (x) L[1] - L[1] (x) L[0]", &alg);
        assert!(check_coalgebra(&delta_r(&alg, &r), 6).unwrap().passed());

        // gamma = gammad = 1 leaves D0: the image of L[1] has a symmetric part
        let p = FamilyParams { gamma: s(1), gamma_dag: s(1), z1: CI, z1_dag: CI, ..Default::default() };
        let sigma = rho_family(p).unwrap();
        let v = check_coalgebra(&sigma, 2).unwrap();
        assert!(!v.passed());
        assert!(v.witnesses.iter().any(|w| w.input.contains("antisymmetry")));
    }

    #[test]
    fn d0_selector_chains_break_co_jacobi() {
        // Antisymmetric images do not make a Lie coalgebra here: when the
        // center selector is a mode the family maps non-trivially (z1 = I[0]),
        // sigma feeds its own central image back into (1 (x) sigma) sigma and
        // the cyclic sum cannot cancel across distinct orbits.
        let p = FamilyParams {
            alpha: s(1),
            alpha_dag: s(-1),
            z1: I(0),
            z1_dag: I(0),
            ..Default::default()
        };
        assert!(p.is_d0());
        let sigma = rho_family(p).unwrap();
        let jac = co_jacobiator(&sigma, &L(2)).unwrap();
        // sigma(L_2) = 2(I_0 (x) I_2 - I_2 (x) I_0), sigma(I_0) = I_0 (x) CI - CI (x) I_0
        let want = &cyclic_sum(&Tensor3::term((I(2), I(0), CI), s(-2)))
            + &cyclic_sum(&Tensor3::term((I(2), CI, I(0)), s(2)));
        assert_eq!(jac, want);
        assert!(!jac.is_zero());
        assert!(!check_coalgebra(&sigma, 3).unwrap().passed());
    }

    #[test]
    fn compatibility_checker() {
        let alg = thv();
        let r = t2("2 L[1] (x) I[-1] - 2 I[-1] (x) L[1] + CL (x) CI", &alg);
        // inner rules are always 1-cocycles
        assert!(check_compatibility(&delta_r(&alg, &r), 4).unwrap().passed());

        let bad = LinearRule::closed(Algebra::Witt, "m-square", |_, b| {
            Ok(match b {
                L(m) => Tensor2::term((L(*m), L(*m)), s(*m)),
                _ => Tensor2::zero(),
            })
        });
        assert!(!check_compatibility(&bad, 2).unwrap().passed());
    }

    #[test]
    fn lemma_identity_cojacobiator_equals_action_on_c() {
        // (1 + xi + xi^2)(1 (x) Delta_r) Delta_r(x) = x . c(r) for antisymmetric r
        let alg = thv();
        let r = &wedge(
            &parse_element("L[2] - I[0]", &alg).unwrap(),
            &parse_element("1/2 I[-1] + L[1]", &alg).unwrap(),
        ) + &wedge(&parse_element("I[2]", &alg).unwrap(), &parse_element("L[-3]", &alg).unwrap());
        let rule = delta_r(&alg, &r);
        let c = c_of_r(&alg, &r).unwrap();
        for x in alg.generators(3) {
            let lhs = co_jacobiator(&rule, &x).unwrap();
            let rhs = act_basis(&alg, &x, &c).unwrap();
            assert_eq!(lhs, rhs, "at {x}");
        }
    }

    #[test]
    fn bialgebra_verdicts() {
        let alg = thv();
        let r = t2("L[0] (x) I[1] - I[1] (x) L[0]", &alg);
        let v = verdict_bialgebra(&delta_r(&alg, &r), Some(&r), 5).unwrap();
        assert!(v.passed());
        assert!(v.tags.iter().any(|t| t == "triangular"));
        assert!(v.tags.iter().any(|t| t == "coboundary"));

        let p = FamilyParams {
            alpha: s(1),
            alpha_dag: s(-1),
            z1: CI,
            z1_dag: CI,
            ..Default::default()
        };
        let sigma = rho_family(p).unwrap();
        let v = verdict_bialgebra(&sigma, None, 5).unwrap();
        assert!(v.passed());
        assert!(v.tags.iter().any(|t| t == "non-coboundary"));

        let sq = LinearRule::closed(Algebra::Witt, "square", |_, b| {
            Ok(match b {
                L(m) => Tensor2::basis((L(*m), L(*m))),
                _ => Tensor2::zero(),
            })
        });
        let v = verdict_bialgebra(&sq, None, 2).unwrap();
        assert!(!v.passed());
        assert!(v.axiom("compatibility").is_some_and(|a| !a.passed()));
        assert!(v.axiom("coalgebra").is_some_and(|a| !a.passed()));
    }

    #[test]
    fn table_rule_out_of_window_propagates() {
        let alg = thv();
        let r = t2("L[0] (x) I[1] - I[1] (x) L[0]", &alg);
        let table = delta_r(&alg, &r).tabulate(2).unwrap();
        assert!(matches!(
            check_derivation(&table, 2),
            Err(RuleError::OutOfWindow { .. })
        ));
        assert!(check_derivation(&table.relabel("t"), 1).is_ok());
    }
}
