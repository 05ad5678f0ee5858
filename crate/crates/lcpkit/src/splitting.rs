//! Matrix splittings for the modulus-based iteration families.
//!
//! Every variant rewrites `LCP(q, A)` as an absolute-value fixed-point
//! equation in an auxiliary vector `s` and sweeps
//!
//! ```text
//! lhs * s_{k+1} = rhs_s * s_k + scale * (Omega - A) * |s_k| - scale * r * q
//! ```
//!
//! with `z` recovered as `z = (|s| + s) / r`. Two families are provided:
//!
//! * the *accelerated* family, whose splitting is shifted by `I - L` on both
//!   sides (`L` = negated strictly lower part of `A`), giving
//!   `lhs = M + Omega + I - L` and `rhs_s = N + I - L`;
//! * the classical *baseline* family with `lhs = Omega + M`, `rhs_s = N`.
//!
//! The relaxation variants (SOR/AOR) are assembled in their alpha-scaled
//! form, which multiplies the whole fixed-point equation by `alpha` and
//! keeps assembly free of divisions; `scale` carries the `alpha` factor that
//! applies to the `|s|` and constant terms. The scaled and generic
//! assemblies produce the same iteration map (tested to 1e-12).

use crate::error::{Error, Result};
use crate::problem::LcpProblem;
use crate::sparse::{combine, split_dlu, DiagonalMatrix, SparseMatrix, Term};

/// Method variants. `Nam*` names the accelerated family; `Mgs`/`Msor`/`Maor`
/// are the classical modulus-based baselines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    NamModulus,
    NamModified,
    NamJacobi,
    Namgs,
    Namsor,
    Namaor,
    Mgs,
    Msor,
    Maor,
}

impl Variant {
    pub fn family(self) -> Family {
        match self {
            Variant::Mgs | Variant::Msor | Variant::Maor => Family::Baseline,
            _ => Family::NewAccelerated,
        }
    }

    /// Canonical lower-case tag used by the CLI and reports.
    pub fn tag(self) -> &'static str {
        match self {
            Variant::NamModulus => "nam-mod",
            Variant::NamModified => "nam-modmod",
            Variant::NamJacobi => "nam-jacobi",
            Variant::Namgs => "namgs",
            Variant::Namsor => "namsor",
            Variant::Namaor => "namaor",
            Variant::Mgs => "mgs",
            Variant::Msor => "msor",
            Variant::Maor => "maor",
        }
    }

    /// Display name in the style used by benchmark tables.
    pub fn display(self) -> &'static str {
        match self {
            Variant::NamModulus => "NAM-modulus",
            Variant::NamModified => "NAM-modified",
            Variant::NamJacobi => "NAM-Jacobi",
            Variant::Namgs => "NAMGS",
            Variant::Namsor => "NAMSOR",
            Variant::Namaor => "NAMAOR",
            Variant::Mgs => "MGS",
            Variant::Msor => "MSOR",
            Variant::Maor => "MAOR",
        }
    }

    pub fn parse_tag(tag: &str) -> Result<Self> {
        match tag {
            "nam-mod" => Ok(Variant::NamModulus),
            "nam-modmod" => Ok(Variant::NamModified),
            "nam-jacobi" => Ok(Variant::NamJacobi),
            "namgs" => Ok(Variant::Namgs),
            "namsor" => Ok(Variant::Namsor),
            "namaor" => Ok(Variant::Namaor),
            "mgs" => Ok(Variant::Mgs),
            "msor" => Ok(Variant::Msor),
            "maor" => Ok(Variant::Maor),
            other => Err(Error::InvalidParameter(format!(
                "unknown method '{other}' (expected one of mgs, msor, maor, nam-mod, \
                 nam-modmod, nam-jacobi, namgs, namsor, namaor)"
            ))),
        }
    }

    pub fn needs_alpha(self) -> bool {
        matches!(
            self,
            Variant::NamModified
                | Variant::Namsor
                | Variant::Namaor
                | Variant::Msor
                | Variant::Maor
        )
    }

    pub fn needs_beta(self) -> bool {
        matches!(self, Variant::Namaor | Variant::Maor)
    }

    /// Variants whose per-sweep matrix is structurally lower triangular.
    pub fn lhs_is_lower_triangular(self) -> bool {
        !matches!(self, Variant::NamModulus | Variant::NamModified)
    }

    /// Variants where the relaxation diagonal is fixed by the method itself
    /// (the plain and modified modulus forms) rather than chosen freely.
    pub fn omega_is_fixed(self) -> bool {
        matches!(self, Variant::NamModulus | Variant::NamModified)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    NewAccelerated,
    Baseline,
}

/// A named splitting `A = M - N` plus everything needed to run one variant:
/// the strictly-lower part `L` (splitting sign convention), the relaxation
/// diagonal, the modulus scaling `r` and the relaxation parameters.
#[derive(Debug, Clone)]
pub struct SplittingSpec {
    variant: Variant,
    a: SparseMatrix,
    m: SparseMatrix,
    n_mat: SparseMatrix,
    l: SparseMatrix,
    omega: DiagonalMatrix,
    r: f64,
    alpha: Option<f64>,
    beta: Option<f64>,
}

impl SplittingSpec {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn family(&self) -> Family {
        self.variant.family()
    }

    pub fn a(&self) -> &SparseMatrix {
        &self.a
    }

    pub fn m(&self) -> &SparseMatrix {
        &self.m
    }

    pub fn n_mat(&self) -> &SparseMatrix {
        &self.n_mat
    }

    pub fn l(&self) -> &SparseMatrix {
        &self.l
    }

    pub fn omega(&self) -> &DiagonalMatrix {
        &self.omega
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn beta(&self) -> Option<f64> {
        self.beta
    }

    pub fn dim(&self) -> usize {
        self.a.n()
    }

    /// Override the modulus scaling `r` (experiment knob; the variant
    /// defaults follow the method definitions).
    pub fn with_r(mut self, r: f64) -> Result<Self> {
        if r <= 0.0 {
            return Err(Error::InvalidParameter(format!("r must be > 0, got {r}")));
        }
        self.r = r;
        Ok(self)
    }

    /// Assemble the per-sweep operator for this splitting against `q`.
    ///
    /// Relaxation variants use the alpha-scaled assembly; the others use the
    /// generic family form directly.
    pub fn operator(&self, q: &[f64]) -> Result<IterationOperator> {
        self.check_q(q)?;
        let n = self.dim();
        let (d, l, u) = split_dlu(&self.a);
        let om = &self.omega;
        let (lhs, rhs_s, scale) = match self.variant {
            Variant::NamModulus | Variant::NamModified => {
                // lhs = A + (alpha + 1) I - L (alpha = 1 for the plain form)
                let shift = 1.0 + self.fixed_omega_value();
                let lhs = combine(
                    n,
                    &[
                        Term::Mat(1.0, &self.a),
                        Term::Eye(shift),
                        Term::Mat(-1.0, &l),
                    ],
                )?;
                let rhs_s = combine(n, &[Term::Eye(1.0), Term::Mat(-1.0, &l)])?;
                (lhs, rhs_s, 1.0)
            }
            Variant::NamJacobi => {
                let lhs = combine(
                    n,
                    &[
                        Term::Diag(1.0, &d),
                        Term::Diag(1.0, om),
                        Term::Eye(1.0),
                        Term::Mat(-1.0, &l),
                    ],
                )?;
                let rhs_s = combine(n, &[Term::Mat(1.0, &u), Term::Eye(1.0)])?;
                (lhs, rhs_s, 1.0)
            }
            Variant::Namgs => {
                let lhs = combine(
                    n,
                    &[
                        Term::Diag(1.0, &d),
                        Term::Mat(-2.0, &l),
                        Term::Diag(1.0, om),
                        Term::Eye(1.0),
                    ],
                )?;
                let rhs_s = combine(
                    n,
                    &[Term::Mat(1.0, &u), Term::Eye(1.0), Term::Mat(-1.0, &l)],
                )?;
                (lhs, rhs_s, 1.0)
            }
            Variant::Namsor => {
                let alpha = self.alpha.expect("namsor carries alpha");
                let lhs = combine(
                    n,
                    &[
                        Term::Diag(1.0, &d),
                        Term::Mat(-2.0 * alpha, &l),
                        Term::Diag(alpha, om),
                        Term::Eye(alpha),
                    ],
                )?;
                let rhs_s = combine(
                    n,
                    &[
                        Term::Diag(1.0 - alpha, &d),
                        Term::Mat(-alpha, &l),
                        Term::Mat(alpha, &u),
                        Term::Eye(alpha),
                    ],
                )?;
                (lhs, rhs_s, alpha)
            }
            Variant::Namaor => {
                let alpha = self.alpha.expect("namaor carries alpha");
                let beta = self.beta.expect("namaor carries beta");
                let lhs = combine(
                    n,
                    &[
                        Term::Diag(1.0, &d),
                        Term::Mat(-(alpha + beta), &l),
                        Term::Diag(alpha, om),
                        Term::Eye(alpha),
                    ],
                )?;
                let rhs_s = combine(
                    n,
                    &[
                        Term::Diag(1.0 - alpha, &d),
                        Term::Mat(-beta, &l),
                        Term::Mat(alpha, &u),
                        Term::Eye(alpha),
                    ],
                )?;
                (lhs, rhs_s, alpha)
            }
            Variant::Mgs => {
                let lhs = combine(
                    n,
                    &[
                        Term::Diag(1.0, om),
                        Term::Diag(1.0, &d),
                        Term::Mat(-1.0, &l),
                    ],
                )?;
                let rhs_s = combine(n, &[Term::Mat(1.0, &u)])?;
                (lhs, rhs_s, 1.0)
            }
            Variant::Msor => {
                let alpha = self.alpha.expect("msor carries alpha");
                let lhs = combine(
                    n,
                    &[
                        Term::Diag(1.0, &d),
                        Term::Mat(-alpha, &l),
                        Term::Diag(alpha, om),
                    ],
                )?;
                let rhs_s = combine(n, &[Term::Diag(1.0 - alpha, &d), Term::Mat(alpha, &u)])?;
                (lhs, rhs_s, alpha)
            }
            Variant::Maor => {
                let alpha = self.alpha.expect("maor carries alpha");
                let beta = self.beta.expect("maor carries beta");
                let lhs = combine(
                    n,
                    &[
                        Term::Diag(1.0, &d),
                        Term::Mat(-beta, &l),
                        Term::Diag(alpha, om),
                    ],
                )?;
                let rhs_s = combine(
                    n,
                    &[
                        Term::Diag(1.0 - alpha, &d),
                        Term::Mat(alpha - beta, &l),
                        Term::Mat(alpha, &u),
                    ],
                )?;
                (lhs, rhs_s, alpha)
            }
        };
        self.finish_operator(lhs, rhs_s, scale, q)
    }

    /// Assemble the operator straight from the family equation
    /// (`lhs = M + Omega + I - L`, `rhs_s = N + I - L` for the accelerated
    /// family; `lhs = Omega + M`, `rhs_s = N` for the baseline), without the
    /// alpha scaling. Produces the same iteration map as
    /// [`operator`](Self::operator); kept as an independent assembly route.
    pub fn operator_generic(&self, q: &[f64]) -> Result<IterationOperator> {
        self.check_q(q)?;
        let n = self.dim();
        let om = &self.omega;
        let (lhs, rhs_s) = match self.family() {
            Family::NewAccelerated => {
                let lhs = combine(
                    n,
                    &[
                        Term::Mat(1.0, &self.m),
                        Term::Diag(1.0, om),
                        Term::Eye(1.0),
                        Term::Mat(-1.0, &self.l),
                    ],
                )?;
                let rhs_s = combine(
                    n,
                    &[
                        Term::Mat(1.0, &self.n_mat),
                        Term::Eye(1.0),
                        Term::Mat(-1.0, &self.l),
                    ],
                )?;
                (lhs, rhs_s)
            }
            Family::Baseline => {
                let lhs = combine(n, &[Term::Diag(1.0, om), Term::Mat(1.0, &self.m)])?;
                let rhs_s = combine(n, &[Term::Mat(1.0, &self.n_mat)])?;
                (lhs, rhs_s)
            }
        };
        self.finish_operator(lhs, rhs_s, 1.0, q)
    }

    fn finish_operator(
        &self,
        lhs: SparseMatrix,
        rhs_s: SparseMatrix,
        scale: f64,
        q: &[f64],
    ) -> Result<IterationOperator> {
        let n = self.dim();
        let rhs_abs = combine(n, &[Term::Diag(1.0, &self.omega), Term::Mat(-1.0, &self.a)])?;
        let rhs_const: Vec<f64> = q.iter().map(|&v| -self.r * v).collect();
        // The flag is a method property; a matrix that happens to have an
        // empty upper part may still run through the dense path.
        let lower = self.variant.lhs_is_lower_triangular();
        debug_assert!(!lower || lhs.is_lower_triangular());
        Ok(IterationOperator {
            lhs,
            rhs_s,
            rhs_abs,
            rhs_const,
            abs_scale: scale,
            r: self.r,
            lhs_is_lower_triangular: lower,
        })
    }

    fn check_q(&self, q: &[f64]) -> Result<()> {
        if q.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "operator assembly",
                expected: self.dim(),
                got: q.len(),
            });
        }
        Ok(())
    }

    fn fixed_omega_value(&self) -> f64 {
        match self.variant {
            Variant::NamModulus => 1.0,
            Variant::NamModified => self.alpha.expect("modified form carries alpha"),
            _ => unreachable!("only the modulus forms fix omega"),
        }
    }
}

/// The assembled per-sweep operator.
///
/// One sweep solves `lhs * s' = rhs_s * s + abs_scale * (rhs_abs * |s|) +
/// abs_scale * rhs_const` where `rhs_const = -r q`. `rhs_abs` is stored
/// unscaled as `Omega - A`; `abs_scale` folds the relaxation factor in at
/// application time so all variants share one code path.
#[derive(Debug, Clone)]
pub struct IterationOperator {
    pub lhs: SparseMatrix,
    pub rhs_s: SparseMatrix,
    pub rhs_abs: SparseMatrix,
    pub rhs_const: Vec<f64>,
    pub abs_scale: f64,
    pub r: f64,
    pub lhs_is_lower_triangular: bool,
}

impl IterationOperator {
    pub fn dim(&self) -> usize {
        self.lhs.n()
    }

    /// Evaluate the right-hand side of one sweep into `out`.
    pub fn rhs_into(&self, s: &[f64], abs_s: &mut [f64], t1: &mut [f64], out: &mut [f64]) {
        for (a, &v) in abs_s.iter_mut().zip(s) {
            *a = v.abs();
        }
        self.rhs_s.matvec_into(s, t1).expect("dimensions fixed");
        self.rhs_abs
            .matvec_into(abs_s, out)
            .expect("dimensions fixed");
        for i in 0..out.len() {
            out[i] = t1[i] + self.abs_scale * (out[i] + self.rhs_const[i]);
        }
    }
}

fn require_nonzero_diagonal(a: &SparseMatrix) -> Result<()> {
    for (i, v) in a.diagonal().iter().enumerate() {
        if *v == 0.0 {
            return Err(Error::ZeroDiagonal(i));
        }
    }
    Ok(())
}

fn validate_omega(a: &SparseMatrix, omega: &DiagonalMatrix) -> Result<()> {
    if omega.n() != a.n() {
        return Err(Error::DimensionMismatch {
            context: "omega",
            expected: a.n(),
            got: omega.n(),
        });
    }
    omega.require_positive()
}

fn validate_alpha(alpha: f64) -> Result<()> {
    if alpha <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "alpha must be > 0, got {alpha}"
        )));
    }
    Ok(())
}

fn validate_beta(beta: f64) -> Result<()> {
    if beta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "beta must be >= 0, got {beta}"
        )));
    }
    Ok(())
}

/// Accelerated modulus method: `M = A`, `N = 0`, relaxation diagonal fixed
/// to `I`, `r = 1`. The per-sweep matrix `A + 2I - L` is not triangular.
pub fn make_nam_modulus(a: &SparseMatrix) -> Result<SplittingSpec> {
    let (_, l, _) = split_dlu(a);
    Ok(SplittingSpec {
        variant: Variant::NamModulus,
        a: a.clone(),
        m: a.clone(),
        n_mat: SparseMatrix::zero(a.n()),
        l,
        omega: DiagonalMatrix::identity(a.n()),
        r: 1.0,
        alpha: None,
        beta: None,
    })
}

/// Modified accelerated modulus method: as [`make_nam_modulus`] with the
/// relaxation diagonal `alpha * I`.
pub fn make_nam_modified(a: &SparseMatrix, alpha: f64) -> Result<SplittingSpec> {
    validate_alpha(alpha)?;
    let (_, l, _) = split_dlu(a);
    Ok(SplittingSpec {
        variant: Variant::NamModified,
        a: a.clone(),
        m: a.clone(),
        n_mat: SparseMatrix::zero(a.n()),
        l,
        omega: DiagonalMatrix::scalar(a.n(), alpha),
        r: 1.0,
        alpha: Some(alpha),
        beta: None,
    })
}

/// Accelerated Jacobi variant: `M = D`, `N = L + U`, `r = 2`.
pub fn make_nam_jacobi(a: &SparseMatrix, omega: &DiagonalMatrix) -> Result<SplittingSpec> {
    require_nonzero_diagonal(a)?;
    validate_omega(a, omega)?;
    let (d, l, u) = split_dlu(a);
    let n_mat = combine(a.n(), &[Term::Mat(1.0, &l), Term::Mat(1.0, &u)])?;
    Ok(SplittingSpec {
        variant: Variant::NamJacobi,
        a: a.clone(),
        m: d.to_sparse(),
        n_mat,
        l,
        omega: omega.clone(),
        r: 2.0,
        alpha: None,
        beta: None,
    })
}

/// Accelerated Gauss-Seidel variant: `M = D - L`, `N = U`, `r = 2`.
pub fn make_namgs(a: &SparseMatrix, omega: &DiagonalMatrix) -> Result<SplittingSpec> {
    require_nonzero_diagonal(a)?;
    validate_omega(a, omega)?;
    let (d, l, u) = split_dlu(a);
    let m = combine(a.n(), &[Term::Diag(1.0, &d), Term::Mat(-1.0, &l)])?;
    Ok(SplittingSpec {
        variant: Variant::Namgs,
        a: a.clone(),
        m,
        n_mat: u,
        l,
        omega: omega.clone(),
        r: 2.0,
        alpha: None,
        beta: None,
    })
}

/// Accelerated SOR variant: `M = (1/alpha) D - L`,
/// `N = (1/alpha - 1) D + U`, `r = 2`.
pub fn make_namsor(a: &SparseMatrix, omega: &DiagonalMatrix, alpha: f64) -> Result<SplittingSpec> {
    require_nonzero_diagonal(a)?;
    validate_omega(a, omega)?;
    validate_alpha(alpha)?;
    let (d, l, u) = split_dlu(a);
    let m = combine(a.n(), &[Term::Diag(1.0 / alpha, &d), Term::Mat(-1.0, &l)])?;
    let n_mat = combine(
        a.n(),
        &[Term::Diag(1.0 / alpha - 1.0, &d), Term::Mat(1.0, &u)],
    )?;
    Ok(SplittingSpec {
        variant: Variant::Namsor,
        a: a.clone(),
        m,
        n_mat,
        l,
        omega: omega.clone(),
        r: 2.0,
        alpha: Some(alpha),
        beta: None,
    })
}

/// Accelerated AOR variant: `M = (1/alpha)(D - beta L)`,
/// `N = (1/alpha)((1 - alpha) D + (alpha - beta) L + alpha U)`, `r = 2`.
pub fn make_namaor(
    a: &SparseMatrix,
    omega: &DiagonalMatrix,
    alpha: f64,
    beta: f64,
) -> Result<SplittingSpec> {
    require_nonzero_diagonal(a)?;
    validate_omega(a, omega)?;
    validate_alpha(alpha)?;
    validate_beta(beta)?;
    let (d, l, u) = split_dlu(a);
    let m = combine(
        a.n(),
        &[Term::Diag(1.0 / alpha, &d), Term::Mat(-beta / alpha, &l)],
    )?;
    let n_mat = combine(
        a.n(),
        &[
            Term::Diag((1.0 - alpha) / alpha, &d),
            Term::Mat((alpha - beta) / alpha, &l),
            Term::Mat(1.0, &u),
        ],
    )?;
    Ok(SplittingSpec {
        variant: Variant::Namaor,
        a: a.clone(),
        m,
        n_mat,
        l,
        omega: omega.clone(),
        r: 2.0,
        alpha: Some(alpha),
        beta: Some(beta),
    })
}

/// Baseline variant selector for [`make_baseline`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaselineVariant {
    Mgs,
    Msor { alpha: f64 },
    Maor { alpha: f64, beta: f64 },
}

/// Classical modulus-based splittings over the same `D/L/U` decomposition:
/// MGS (`M = D - L`, `N = U`), MSOR and MAOR, all with `r = 2`.
pub fn make_baseline(
    a: &SparseMatrix,
    omega: &DiagonalMatrix,
    which: BaselineVariant,
) -> Result<SplittingSpec> {
    require_nonzero_diagonal(a)?;
    validate_omega(a, omega)?;
    let (d, l, u) = split_dlu(a);
    let spec = match which {
        BaselineVariant::Mgs => {
            let m = combine(a.n(), &[Term::Diag(1.0, &d), Term::Mat(-1.0, &l)])?;
            SplittingSpec {
                variant: Variant::Mgs,
                a: a.clone(),
                m,
                n_mat: u,
                l,
                omega: omega.clone(),
                r: 2.0,
                alpha: None,
                beta: None,
            }
        }
        BaselineVariant::Msor { alpha } => {
            validate_alpha(alpha)?;
            let m = combine(a.n(), &[Term::Diag(1.0 / alpha, &d), Term::Mat(-1.0, &l)])?;
            let n_mat = combine(
                a.n(),
                &[Term::Diag(1.0 / alpha - 1.0, &d), Term::Mat(1.0, &u)],
            )?;
            SplittingSpec {
                variant: Variant::Msor,
                a: a.clone(),
                m,
                n_mat,
                l,
                omega: omega.clone(),
                r: 2.0,
                alpha: Some(alpha),
                beta: None,
            }
        }
        BaselineVariant::Maor { alpha, beta } => {
            validate_alpha(alpha)?;
            validate_beta(beta)?;
            let m = combine(
                a.n(),
                &[Term::Diag(1.0 / alpha, &d), Term::Mat(-beta / alpha, &l)],
            )?;
            let n_mat = combine(
                a.n(),
                &[
                    Term::Diag((1.0 - alpha) / alpha, &d),
                    Term::Mat((alpha - beta) / alpha, &l),
                    Term::Mat(1.0, &u),
                ],
            )?;
            SplittingSpec {
                variant: Variant::Maor,
                a: a.clone(),
                m,
                n_mat,
                l,
                omega: omega.clone(),
                r: 2.0,
                alpha: Some(alpha),
                beta: Some(beta),
            }
        }
    };
    Ok(spec)
}

/// Build any variant from its tag and parameters; the entry point used by
/// the CLI and the foreign-function layer.
pub fn build_spec(
    a: &SparseMatrix,
    variant: Variant,
    omega: &DiagonalMatrix,
    alpha: Option<f64>,
    beta: Option<f64>,
) -> Result<SplittingSpec> {
    let need_alpha = || {
        alpha.ok_or_else(|| {
            Error::InvalidParameter(format!("method '{}' requires alpha", variant.tag()))
        })
    };
    let need_beta = || {
        beta.ok_or_else(|| {
            Error::InvalidParameter(format!("method '{}' requires beta", variant.tag()))
        })
    };
    match variant {
        Variant::NamModulus => make_nam_modulus(a),
        Variant::NamModified => make_nam_modified(a, need_alpha()?),
        Variant::NamJacobi => make_nam_jacobi(a, omega),
        Variant::Namgs => make_namgs(a, omega),
        Variant::Namsor => make_namsor(a, omega, need_alpha()?),
        Variant::Namaor => make_namaor(a, omega, need_alpha()?, need_beta()?),
        Variant::Mgs => make_baseline(a, omega, BaselineVariant::Mgs),
        Variant::Msor => make_baseline(
            a,
            omega,
            BaselineVariant::Msor {
                alpha: need_alpha()?,
            },
        ),
        Variant::Maor => make_baseline(
            a,
            omega,
            BaselineVariant::Maor {
                alpha: need_alpha()?,
                beta: need_beta()?,
            },
        ),
    }
}

/// Largest entrywise deviation of `M - N` from `A`; 0 for a valid splitting.
pub fn splitting_defect(spec: &SplittingSpec) -> f64 {
    let n = spec.dim();
    let diff = combine(
        n,
        &[Term::Mat(1.0, spec.m()), Term::Mat(-1.0, spec.n_mat())],
    )
    .expect("same dimension");
    diff.max_abs_diff(spec.a())
}

/// Convenience wrapper: build the spec's operator against a problem.
pub fn operator_for(spec: &SplittingSpec, problem: &LcpProblem) -> Result<IterationOperator> {
    if problem.n() != spec.dim() {
        return Err(Error::DimensionMismatch {
            context: "operator_for",
            expected: spec.dim(),
            got: problem.n(),
        });
    }
    spec.operator(problem.q())
}
