//! Basis-indexed linear maps (derivation and cobracket candidates).
//!
//! A rule is either a closed-form family, evaluable at every admissible
//! basis vector, or a finite table over a window. Checkers and solvers
//! accept both; tables report [`RuleError::OutOfWindow`] beyond their
//! support.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, BasisVector, Degree, Element};
use crate::freevec::FreeVector;
use crate::scalar::Scalar;
use crate::tensor::{Pair, Tensor2, TensorKey};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("rule {rule:?} is not defined at {basis} (outside its table window)")]
    OutOfWindow { rule: String, basis: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

type ClosedFn<K> =
    dyn Fn(&Algebra, &BasisVector) -> Result<FreeVector<K>, RuleError> + Send + Sync;

#[derive(Clone)]
enum RuleDef<K: TensorKey> {
    Closed(Arc<ClosedFn<K>>),
    Table(Arc<BTreeMap<BasisVector, FreeVector<K>>>),
}

/// A linear map from the algebra into one of its tensor powers, given on
/// basis vectors and extended linearly.
#[derive(Clone)]
pub struct LinearRule<K: TensorKey> {
    algebra: Algebra,
    label: String,
    def: RuleDef<K>,
}

impl<K: TensorKey + 'static> LinearRule<K> {
    pub fn closed<F>(algebra: Algebra, label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Algebra, &BasisVector) -> Result<FreeVector<K>, RuleError> + Send + Sync + 'static,
    {
        LinearRule { algebra, label: label.into(), def: RuleDef::Closed(Arc::new(f)) }
    }

    pub fn table(
        algebra: Algebra,
        label: impl Into<String>,
        table: BTreeMap<BasisVector, FreeVector<K>>,
    ) -> Self {
        LinearRule { algebra, label: label.into(), def: RuleDef::Table(Arc::new(table)) }
    }

    pub fn zero(algebra: Algebra) -> Self {
        LinearRule::closed(algebra, "0", |_, _| Ok(FreeVector::zero()))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_table(&self) -> bool {
        matches!(self.def, RuleDef::Table(_))
    }

    pub fn eval_basis(&self, b: &BasisVector) -> Result<FreeVector<K>, RuleError> {
        self.algebra.check_admissible(b)?;
        match &self.def {
            RuleDef::Closed(f) => f(&self.algebra, b),
            RuleDef::Table(t) => t.get(b).cloned().ok_or_else(|| RuleError::OutOfWindow {
                rule: self.label.clone(),
                basis: b.to_string(),
            }),
        }
    }

    /// Linear extension to arbitrary elements.
    pub fn eval(&self, v: &Element) -> Result<FreeVector<K>, RuleError> {
        v.try_map_terms(|b, c| Ok(self.eval_basis(b)?.scale(c)))
    }

    /// The pointwise sum of two rules over the same algebra.
    pub fn add(&self, other: &LinearRule<K>) -> LinearRule<K> {
        assert_eq!(self.algebra, other.algebra, "rule sum across algebras");
        let a = self.clone();
        let b = other.clone();
        let label = format!("{} + {}", self.label, other.label);
        LinearRule::closed(self.algebra.clone(), label, move |_, x| {
            Ok(&a.eval_basis(x)? + &b.eval_basis(x)?)
        })
    }

    pub fn scale(&self, c: &Scalar) -> LinearRule<K> {
        let a = self.clone();
        let c = c.clone();
        let label = format!("{} {}", c, self.label);
        LinearRule::closed(self.algebra.clone(), label, move |_, x| {
            Ok(a.eval_basis(x)?.scale(&c))
        })
    }

    /// Freezes the rule into a table over `generators(window)`.
    pub fn tabulate(&self, window: u32) -> Result<LinearRule<K>, RuleError> {
        let mut table = BTreeMap::new();
        for b in self.algebra.generators(window) {
            table.insert(b, self.eval_basis(&b)?);
        }
        Ok(LinearRule::table(self.algebra.clone(), self.label.clone(), table))
    }

    /// Images on the window, in generator order; the printable summary of a
    /// table rule.
    pub fn images(&self, window: u32) -> Result<Vec<(BasisVector, FreeVector<K>)>, RuleError> {
        self.algebra
            .generators(window)
            .into_iter()
            .map(|b| Ok((b, self.eval_basis(&b)?)))
            .collect()
    }
}

/// Splits a rule into its degree-homogeneous components on a window.
///
/// Component `d` maps each window basis vector `b` to the degree
/// `deg(b) + d` part of its image; the components sum back to the rule on
/// the window.
pub fn homogeneous_components<K: TensorKey + 'static>(
    rule: &LinearRule<K>,
    window: u32,
) -> Result<BTreeMap<Degree, LinearRule<K>>, RuleError> {
    let alg = rule.algebra().clone();
    let mut tables: BTreeMap<Degree, BTreeMap<BasisVector, FreeVector<K>>> = BTreeMap::new();
    let gens = alg.generators(window);
    for b in &gens {
        let db = alg.degree(b)?;
        for (k, c) in rule.eval_basis(b)?.iter() {
            let offset = K::degree(&alg, k)? - db.clone();
            tables
                .entry(offset)
                .or_default()
                .entry(*b)
                .or_insert_with(FreeVector::zero)
                .add_term(k.clone(), c.clone());
        }
    }
    Ok(tables
        .into_iter()
        .map(|(d, mut table)| {
            for b in &gens {
                table.entry(*b).or_insert_with(FreeVector::zero);
            }
            let label = format!("{}[{}]", rule.label(), d);
            (d, LinearRule::table(alg.clone(), label, table))
        })
        .collect())
}

/// Parameters of the six-scalar derivation families, with center selectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub alpha: Scalar,
    pub alpha_dag: Scalar,
    pub beta: Scalar,
    pub beta_dag: Scalar,
    pub gamma: Scalar,
    pub gamma_dag: Scalar,
    pub z1: BasisVector,
    pub z1_dag: BasisVector,
    pub w1: BasisVector,
    pub w1_dag: BasisVector,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams {
            alpha: Scalar::zero(),
            alpha_dag: Scalar::zero(),
            beta: Scalar::zero(),
            beta_dag: Scalar::zero(),
            gamma: Scalar::zero(),
            gamma_dag: Scalar::zero(),
            z1: BasisVector::I(0),
            z1_dag: BasisVector::I(0),
            w1: BasisVector::I(0),
            w1_dag: BasisVector::I(0),
        }
    }
}

impl FamilyParams {
    /// Whether the parameters lie in the antisymmetric-image subfamily:
    /// daggered scalars are negatives and the selectors agree.
    pub fn is_d0(&self) -> bool {
        self.alpha == -self.alpha_dag.clone()
            && self.beta == -self.beta_dag.clone()
            && self.gamma == -self.gamma_dag.clone()
            && self.z1 == self.z1_dag
            && self.w1 == self.w1_dag
    }

    fn check_selectors(&self, alg: &Algebra) -> Result<(), AlgebraError> {
        for z in [&self.z1, &self.z1_dag, &self.w1, &self.w1_dag] {
            if !alg.is_central(z) {
                return Err(AlgebraError::InvalidSelector {
                    selector: z.to_string(),
                    algebra: alg.id(),
                });
            }
        }
        Ok(())
    }
}

fn delta0(n: i64, v: FreeVector<Pair>) -> FreeVector<Pair> {
    if n == 0 {
        v
    } else {
        FreeVector::zero()
    }
}

fn pair2(
    c1: Scalar,
    a1: BasisVector,
    b1: BasisVector,
    c2: Scalar,
    a2: BasisVector,
    b2: BasisVector,
) -> Tensor2 {
    Tensor2::from_terms([((a1, b1), c1), ((a2, b2), c2)])
}

/// The one-dimensional-valued derivation family of the twisted
/// Heisenberg-Virasoro algebra:
/// `chi(L_n) = (alpha n + gamma) I_n + delta_{n,0} (gamma + alpha) CLI`, etc.
pub fn chi_family(alpha: Scalar, beta: Scalar, gamma: Scalar) -> LinearRule<BasisVector> {
    use BasisVector::*;
    let label = format!("chi(alpha={alpha},beta={beta},gamma={gamma})");
    LinearRule::closed(Algebra::TwistedHv, label, move |_, b| {
        let out = match b {
            L(n) => {
                let mut v = Element::term(
                    I(*n),
                    &alpha * &Scalar::from_int(*n) + gamma.clone(),
                );
                if *n == 0 {
                    v.add_term(CLI, &gamma + &alpha);
                }
                v
            }
            I(n) => {
                let mut v = Element::term(I(*n), beta.clone());
                if *n == 0 {
                    v.add_term(CI, &alpha + &gamma);
                }
                v
            }
            CL => Element::term(CLI, &Scalar::from_int(-24) * &alpha),
            CLI => Element::from_terms([(CLI, beta.clone()), (CI, -alpha.clone())]),
            CI => Element::term(CI, &Scalar::from_int(2) * &beta),
            _ => unreachable!("admissibility checked by eval_basis"),
        };
        Ok(out)
    })
}

/// The tensor-valued derivation family of the twisted Heisenberg-Virasoro
/// algebra, six scalars and four center selectors.
pub fn rho_family(params: FamilyParams) -> Result<LinearRule<Pair>, AlgebraError> {
    use BasisVector::*;
    params.check_selectors(&Algebra::TwistedHv)?;
    let label = format!(
        "rho(alpha={},alphad={},beta={},betad={},gamma={},gammad={},z1={},z1d={},w1={},w1d={})",
        params.alpha,
        params.alpha_dag,
        params.beta,
        params.beta_dag,
        params.gamma,
        params.gamma_dag,
        params.z1,
        params.z1_dag,
        params.w1,
        params.w1_dag
    );
    let p = params;
    Ok(LinearRule::closed(Algebra::TwistedHv, label, move |_, b| {
        let n24 = Scalar::from_int(-24);
        let two = Scalar::from_int(2);
        let out = match b {
            L(n) => {
                let ns = Scalar::from_int(*n);
                let mut v = pair2(
                    &(&p.alpha * &ns) + &p.gamma,
                    p.z1,
                    I(*n),
                    &(&p.alpha_dag * &ns) + &p.gamma_dag,
                    I(*n),
                    p.z1_dag,
                );
                v.add_assign(&delta0(
                    *n,
                    pair2(
                        &p.gamma + &p.alpha,
                        p.z1,
                        CLI,
                        &p.gamma_dag + &p.alpha_dag,
                        CLI,
                        p.z1_dag,
                    ),
                ));
                v
            }
            I(n) => {
                let mut v = pair2(
                    p.beta.clone(),
                    p.w1,
                    I(*n),
                    p.beta_dag.clone(),
                    I(*n),
                    p.w1_dag,
                );
                v.add_assign(&delta0(
                    *n,
                    pair2(
                        &p.gamma + &p.alpha,
                        p.z1,
                        CI,
                        &p.gamma_dag + &p.alpha_dag,
                        CI,
                        p.z1_dag,
                    ),
                ));
                v
            }
            CL => pair2(
                &n24 * &p.alpha,
                p.z1,
                CLI,
                &n24 * &p.alpha_dag,
                CLI,
                p.z1_dag,
            ),
            CLI => {
                let mut v = pair2(
                    p.beta.clone(),
                    p.w1,
                    CLI,
                    p.beta_dag.clone(),
                    CLI,
                    p.w1_dag,
                );
                v.add_assign(&pair2(
                    -p.alpha.clone(),
                    p.z1,
                    CI,
                    -p.alpha_dag.clone(),
                    CI,
                    p.z1_dag,
                ));
                v
            }
            CI => pair2(
                &two * &p.beta,
                p.w1,
                CI,
                &two * &p.beta_dag,
                CI,
                p.w1_dag,
            ),
            _ => unreachable!(),
        };
        Ok(out)
    }))
}

/// The 24 spanning generators of the `rho` family: each scalar slot set to
/// one against each of the four central selectors, plain and daggered.
pub fn rho_generator_rules() -> Vec<LinearRule<Pair>> {
    let center = Algebra::TwistedHv.center_basis();
    let mut out = Vec::with_capacity(24);
    for slot in 0..6 {
        for z in &center {
            let mut p = FamilyParams::default();
            match slot {
                0 => {
                    p.alpha = Scalar::one();
                    p.z1 = *z;
                }
                1 => {
                    p.alpha_dag = Scalar::one();
                    p.z1_dag = *z;
                }
                2 => {
                    p.gamma = Scalar::one();
                    p.z1 = *z;
                }
                3 => {
                    p.gamma_dag = Scalar::one();
                    p.z1_dag = *z;
                }
                4 => {
                    p.beta = Scalar::one();
                    p.w1 = *z;
                }
                _ => {
                    p.beta_dag = Scalar::one();
                    p.w1_dag = *z;
                }
            }
            out.push(rho_family(p).expect("central selectors"));
        }
    }
    out
}

/// The six-parameter family on the centerless twisted Heisenberg-Virasoro
/// algebra; the center selector collapses to `I[0]`.
pub fn g1_family(
    alpha: Scalar,
    alpha_dag: Scalar,
    beta: Scalar,
    beta_dag: Scalar,
    gamma: Scalar,
    gamma_dag: Scalar,
) -> LinearRule<Pair> {
    use BasisVector::*;
    let label = format!(
        "g1(alpha={alpha},alphad={alpha_dag},beta={beta},betad={beta_dag},gamma={gamma},gammad={gamma_dag})"
    );
    LinearRule::closed(Algebra::G1, label, move |_, b| {
        let out = match b {
            L(n) => {
                let ns = Scalar::from_int(*n);
                pair2(
                    &(&alpha * &ns) + &gamma,
                    I(0),
                    I(*n),
                    &(&alpha_dag * &ns) + &gamma_dag,
                    I(*n),
                    I(0),
                )
            }
            I(n) => pair2(beta.clone(), I(0), I(*n), beta_dag.clone(), I(*n), I(0)),
            _ => unreachable!(),
        };
        Ok(out)
    })
}

/// The two-parameter family on differential operators:
/// `zeta(t^m D^n) = alpha n t^m D^{n-1} (x) 1 + alphad n 1 (x) t^m D^{n-1}`.
pub fn zeta_family(alpha: Scalar, alpha_dag: Scalar, max_order: u32) -> LinearRule<Pair> {
    use BasisVector::*;
    let label = format!("zeta(alpha={alpha},alphad={alpha_dag})");
    LinearRule::closed(Algebra::DiffOps { max_order }, label, move |_, b| {
        let out = match b {
            E(_, 0) => Tensor2::zero(),
            E(m, n) => {
                let ns = Scalar::from_int(*n as i64);
                pair2(
                    &alpha * &ns,
                    E(*m, n - 1),
                    E(0, 0),
                    &alpha_dag * &ns,
                    E(0, 0),
                    E(*m, n - 1),
                )
            }
            _ => unreachable!(),
        };
        Ok(out)
    })
}

/// The derivation family of the Schroedinger-Virasoro algebra; note the
/// factor 2 on the `I` images and none on the `Y` images.
pub fn sv_family(params: FamilyParams) -> Result<LinearRule<Pair>, AlgebraError> {
    use BasisVector::*;
    params.check_selectors(&Algebra::Sv)?;
    let label = format!(
        "sv(alpha={},alphad={},beta={},betad={},gamma={},gammad={},z1={},z1d={},w1={},w1d={})",
        params.alpha,
        params.alpha_dag,
        params.beta,
        params.beta_dag,
        params.gamma,
        params.gamma_dag,
        params.z1,
        params.z1_dag,
        params.w1,
        params.w1_dag
    );
    let p = params;
    Ok(LinearRule::closed(Algebra::Sv, label, move |_, b| {
        let two = Scalar::from_int(2);
        let out = match b {
            L(n) => {
                let ns = Scalar::from_int(*n);
                pair2(
                    &(&p.alpha * &ns) + &p.gamma,
                    p.z1,
                    I(*n),
                    &(&p.alpha_dag * &ns) + &p.gamma_dag,
                    I(*n),
                    p.z1_dag,
                )
            }
            I(n) => pair2(
                &two * &p.beta,
                p.w1,
                I(*n),
                &two * &p.beta_dag,
                I(*n),
                p.w1_dag,
            ),
            Y(k) => pair2(p.beta.clone(), p.w1, Y(*k), p.beta_dag.clone(), Y(*k), p.w1_dag),
            C => Tensor2::zero(),
            _ => unreachable!(),
        };
        Ok(out)
    }))
}
