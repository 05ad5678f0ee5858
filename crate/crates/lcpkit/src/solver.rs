//! The fixed-point iteration engine.
//!
//! A solve sweeps `lhs * s' = rhs_s * s + scale * ((Omega - A)|s| - r q)`,
//! recovers `z = (|s| + s) / r` after every update, and stops on the natural
//! residual `Res(z) = ||min(z, Az + q)||_2 < epsilon`. The residual is also
//! checked once before the first update, so a start at the solution reports
//! zero iterations. Sweeps are strictly sequential and every accumulation
//! order is fixed, making residual histories bitwise reproducible.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::dense::{DenseMatrix, LuFactors};
use crate::error::{Error, Result};
use crate::problem::{alternating_start, LcpProblem};
use crate::sparse::lower_triangular_solve_into;
use crate::splitting::{operator_for, IterationOperator, SplittingSpec};

/// Residual magnitude beyond which a run is declared divergent. The methods
/// themselves have no divergence handling; parameter sweeps outside the
/// convergence domain still have to terminate.
pub const DIVERGENCE_GUARD: f64 = 1e12;

/// Initial vector policy.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum StartVector {
    /// The conventional benchmark start `(1, 0, 1, 0, ...)`.
    #[default]
    Alternating,
    Zero,
    Custom(Vec<f64>),
}

impl StartVector {
    fn materialize(&self, n: usize) -> Result<Vec<f64>> {
        match self {
            StartVector::Alternating => Ok(alternating_start(n)),
            StartVector::Zero => Ok(vec![0.0; n]),
            StartVector::Custom(v) => {
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        context: "custom start vector",
                        expected: n,
                        got: v.len(),
                    });
                }
                Ok(v.clone())
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Stopping tolerance on the natural residual.
    pub epsilon: f64,
    pub max_iters: usize,
    pub start: StartVector,
    pub record_history: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-5,
            max_iters: 10_000,
            start: StartVector::Alternating,
            record_history: false,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be > 0, got {}",
                self.epsilon
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SolveStatus {
    Converged,
    MaxIters,
    Diverged,
}

/// Outcome of one solve.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub status: SolveStatus,
    /// Completed updates of `s`; the pre-update residual check is not counted.
    pub iterations: usize,
    pub final_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_history: Option<Vec<f64>>,
    #[serde(skip)]
    pub z: Vec<f64>,
    #[serde(skip)]
    pub s: Vec<f64>,
    #[serde(serialize_with = "serialize_duration_secs", rename = "wall_time_secs")]
    pub wall_time: Duration,
}

fn serialize_duration_secs<S: serde::Serializer>(
    d: &Duration,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_f64(d.as_secs_f64())
}

impl SolveReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Componentwise `(|s_i| + s_i) / r`; nonnegative by construction.
pub fn recover_z(s: &[f64], r: f64) -> Vec<f64> {
    s.iter().map(|&v| (v.abs() + v) / r).collect()
}

fn recover_z_into(s: &[f64], r: f64, z: &mut [f64]) {
    for (zi, &v) in z.iter_mut().zip(s) {
        *zi = (v.abs() + v) / r;
    }
}

/// One sweep applied through forward substitution. Requires a structurally
/// lower-triangular per-sweep matrix; use [`dense_step`] otherwise.
pub fn step(op: &IterationOperator, s: &[f64]) -> Result<Vec<f64>> {
    if !op.lhs_is_lower_triangular {
        return Err(Error::InvalidParameter(
            "step requires a lower-triangular lhs; use dense_step".into(),
        ));
    }
    if s.len() != op.dim() {
        return Err(Error::DimensionMismatch {
            context: "step",
            expected: op.dim(),
            got: s.len(),
        });
    }
    let n = op.dim();
    let mut abs_s = vec![0.0; n];
    let mut t1 = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    op.rhs_into(s, &mut abs_s, &mut t1, &mut rhs);
    let mut out = vec![0.0; n];
    lower_triangular_solve_into(&op.lhs, &rhs, &mut out)?;
    Ok(out)
}

/// One sweep applied through a dense LU factorization of the per-sweep
/// matrix (computed on each call; solves inside [`solve`] factorize once).
/// Intended for the non-triangular variants at moderate dimensions.
pub fn dense_step(op: &IterationOperator, s: &[f64]) -> Result<Vec<f64>> {
    if s.len() != op.dim() {
        return Err(Error::DimensionMismatch {
            context: "dense_step",
            expected: op.dim(),
            got: s.len(),
        });
    }
    let n = op.dim();
    let lu = DenseMatrix::from_sparse(&op.lhs).lu()?;
    let mut abs_s = vec![0.0; n];
    let mut t1 = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    op.rhs_into(s, &mut abs_s, &mut t1, &mut rhs);
    lu.solve(&rhs)
}

enum Stepper {
    Triangular,
    Dense(Box<LuFactors>),
}

impl Stepper {
    fn new(op: &IterationOperator) -> Result<Self> {
        if op.lhs_is_lower_triangular {
            Ok(Stepper::Triangular)
        } else {
            let lu = DenseMatrix::from_sparse(&op.lhs).lu()?;
            Ok(Stepper::Dense(Box::new(lu)))
        }
    }

    fn apply(&self, op: &IterationOperator, rhs: &[f64], out: &mut [f64]) -> Result<()> {
        match self {
            Stepper::Triangular => lower_triangular_solve_into(&op.lhs, rhs, out),
            Stepper::Dense(lu) => {
                lu.solve_into(rhs, out);
                Ok(())
            }
        }
    }
}

/// Run the iteration to termination.
pub fn solve(
    problem: &LcpProblem,
    spec: &SplittingSpec,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    cfg.validate()?;
    let started = Instant::now();
    let op = operator_for(spec, problem)?;
    let stepper = Stepper::new(&op)?;
    let n = problem.n();
    let r = op.r;

    let mut s = cfg.start.materialize(n)?;
    let mut z = vec![0.0; n];
    let mut abs_s = vec![0.0; n];
    let mut t1 = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    let mut s_next = vec![0.0; n];

    recover_z_into(&s, r, &mut z);
    let mut res = problem.residual(&z)?;
    let mut history = cfg.record_history.then(|| vec![res]);
    let mut iterations = 0;

    let status = loop {
        if res < cfg.epsilon {
            break SolveStatus::Converged;
        }
        if !res.is_finite() || res > DIVERGENCE_GUARD {
            break SolveStatus::Diverged;
        }
        if iterations >= cfg.max_iters {
            break SolveStatus::MaxIters;
        }
        op.rhs_into(&s, &mut abs_s, &mut t1, &mut rhs);
        stepper.apply(&op, &rhs, &mut s_next)?;
        std::mem::swap(&mut s, &mut s_next);
        iterations += 1;
        recover_z_into(&s, r, &mut z);
        res = problem.residual(&z)?;
        if let Some(h) = history.as_mut() {
            h.push(res);
        }
    };

    Ok(SolveReport {
        status,
        iterations,
        final_residual: res,
        residual_history: history,
        z,
        s,
        wall_time: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{alternating_solution, gen_example1, gen_example2};
    use crate::sparse::{DiagonalMatrix, SparseMatrix};
    use crate::splitting::{
        make_baseline, make_nam_modulus, make_namgs, make_namsor, BaselineVariant,
    };

    fn diag_of(a: &SparseMatrix) -> DiagonalMatrix {
        DiagonalMatrix::new(a.diagonal())
    }

    #[test]
    fn scalar_problem_fixed_point() {
        // A = (2), q = (-2): z* = 1; with r = 2, s* = r z* / 2 = 1.
        let a = SparseMatrix::from_triplets(1, &[(0, 0, 2.0)]).unwrap();
        let p = LcpProblem::new(a.clone(), vec![-2.0]).unwrap();
        let spec = make_namgs(&a, &DiagonalMatrix::new(vec![2.0])).unwrap();
        let op = operator_for(&spec, &p).unwrap();
        let s1 = step(&op, &[1.0]).unwrap();
        assert!((s1[0] - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn zero_problem_maps_zero_to_zero() {
        let a = SparseMatrix::from_triplets(2, &[(0, 0, 3.0), (1, 1, 3.0)]).unwrap();
        let p = LcpProblem::new(a.clone(), vec![0.0, 0.0]).unwrap();
        let spec = make_namgs(&a, &diag_of(&a)).unwrap();
        let op = operator_for(&spec, &p).unwrap();
        assert_eq!(step(&op, &[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn fixed_point_start_reports_zero_iterations() {
        let p = gen_example1(2, 4.0).unwrap();
        let z_star = alternating_solution(p.n());
        let spec = make_namgs(p.a(), &diag_of(p.a())).unwrap();
        // w* = 0, so s* = r z* / 2
        let s_star: Vec<f64> = z_star.iter().map(|z| spec.r() * z / 2.0).collect();
        let report = solve(
            &p,
            &spec,
            &SolverConfig {
                start: StartVector::Custom(s_star),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(report.status, SolveStatus::Converged);
        assert_eq!(report.iterations, 0);
    }

    #[test]
    fn step_fixed_point_residual() {
        let p = gen_example1(2, 4.0).unwrap();
        let spec = make_namgs(p.a(), &diag_of(p.a())).unwrap();
        let op = operator_for(&spec, &p).unwrap();
        let s_star: Vec<f64> = alternating_solution(p.n())
            .iter()
            .map(|z| spec.r() * z / 2.0)
            .collect();
        let s1 = step(&op, &s_star).unwrap();
        for (a, b) in s1.iter().zip(&s_star) {
            assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn dense_step_agrees_with_triangular_step() {
        let p = gen_example1(3, 4.0).unwrap();
        let om = diag_of(p.a());
        for spec in [
            make_namgs(p.a(), &om).unwrap(),
            make_namsor(p.a(), &om, 0.91).unwrap(),
            make_baseline(p.a(), &om, BaselineVariant::Mgs).unwrap(),
        ] {
            let op = operator_for(&spec, &p).unwrap();
            let mut s = alternating_start(p.n());
            for sweep in 0..20 {
                let a = step(&op, &s).unwrap();
                let b = dense_step(&op, &s).unwrap();
                for (x, y) in a.iter().zip(&b) {
                    assert!(
                        (x - y).abs() <= 1e-10,
                        "engines diverged at sweep {sweep} for {}",
                        spec.variant().tag()
                    );
                }
                s = a;
            }
        }
    }

    #[test]
    fn dense_step_identity_lhs_returns_rhs() {
        // Hand-built operator with lhs = I.
        let eye = SparseMatrix::identity(2);
        let op = IterationOperator {
            lhs: eye.clone(),
            rhs_s: eye.clone(),
            rhs_abs: SparseMatrix::zero(2),
            rhs_const: vec![0.5, -0.25],
            abs_scale: 1.0,
            r: 2.0,
            lhs_is_lower_triangular: true,
        };
        let out = dense_step(&op, &[1.0, 2.0]).unwrap();
        assert!((out[0] - 1.5).abs() < 1e-15);
        assert!((out[1] - 1.75).abs() < 1e-15);
    }

    #[test]
    fn nam_modulus_converges_to_reference() {
        let p = gen_example1(2, 4.0).unwrap();
        let spec = make_nam_modulus(p.a()).unwrap();
        let report = solve(&p, &spec, &SolverConfig::default()).unwrap();
        assert_eq!(report.status, SolveStatus::Converged);
        let z_star = alternating_solution(p.n());
        for (a, b) in report.z.iter().zip(&z_star) {
            assert!((a - b).abs() <= 1e-4);
        }
    }

    #[test]
    fn recover_z_clips_negative_components() {
        assert_eq!(recover_z(&[-3.0, 2.0], 2.0), vec![0.0, 2.0]);
        assert_eq!(recover_z(&[0.0, 0.0], 2.0), vec![0.0, 0.0]);
    }

    #[test]
    fn iterate_z_nonnegative_throughout() {
        let p = gen_example2(3, 4.0).unwrap();
        let spec = make_namgs(p.a(), &diag_of(p.a())).unwrap();
        let op = operator_for(&spec, &p).unwrap();
        let mut s = alternating_start(p.n());
        for _ in 0..10 {
            s = step(&op, &s).unwrap();
            assert!(recover_z(&s, spec.r()).iter().all(|&z| z >= 0.0));
        }
    }

    #[test]
    fn deterministic_residual_history() {
        let p = gen_example1(4, 4.0).unwrap();
        let spec = make_namgs(p.a(), &diag_of(p.a())).unwrap();
        let cfg = SolverConfig {
            record_history: true,
            ..Default::default()
        };
        let r1 = solve(&p, &spec, &cfg).unwrap();
        let r2 = solve(&p, &spec, &cfg).unwrap();
        assert_eq!(r1.residual_history, r2.residual_history);
        assert_eq!(r1.iterations, r2.iterations);
        assert_eq!(r1.z, r2.z);
    }

    #[test]
    fn max_iters_status() {
        let p = gen_example1(3, 4.0).unwrap();
        let spec = make_namgs(p.a(), &diag_of(p.a())).unwrap();
        let report = solve(
            &p,
            &spec,
            &SolverConfig {
                max_iters: 1,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(report.status, SolveStatus::MaxIters);
        assert_eq!(report.iterations, 1);
    }

    #[test]
    fn modulus_scaling_override_reaches_same_solution() {
        // r is a free parameter of the reformulation: the constant term and
        // the z-recovery share it, so any r > 0 solves the same LCP
        let p = gen_example1(4, 4.0).unwrap();
        let om = diag_of(p.a());
        let base = make_namgs(p.a(), &om).unwrap();
        let with_r = make_namgs(p.a(), &om).unwrap().with_r(4.0).unwrap();
        let a = solve(&p, &base, &SolverConfig::default()).unwrap();
        let b = solve(&p, &with_r, &SolverConfig::default()).unwrap();
        assert_eq!(a.status, SolveStatus::Converged);
        assert_eq!(b.status, SolveStatus::Converged);
        for (x, y) in a.z.iter().zip(&b.z) {
            assert!((x - y).abs() <= 2e-4, "solutions differ: {x} vs {y}");
        }
        assert!(make_namgs(p.a(), &om).unwrap().with_r(0.0).is_err());
    }

    #[test]
    fn report_json_shape() {
        let p = gen_example1(2, 4.0).unwrap();
        let spec = make_namgs(p.a(), &diag_of(p.a())).unwrap();
        let report = solve(&p, &spec, &SolverConfig::default()).unwrap();
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["status"], "CONVERGED");
        assert!(json["iterations"].is_u64());
        assert!(json["final_residual"].is_f64());
        assert!(json["wall_time_secs"].is_f64());
    }

    #[test]
    fn solution_satisfies_complementarity() {
        use crate::problem::is_complementary_pair;
        let p = gen_example2(5, 4.0).unwrap();
        let spec = make_namsor(p.a(), &diag_of(p.a()), 0.88).unwrap();
        let report = solve(&p, &spec, &SolverConfig::default()).unwrap();
        assert_eq!(report.status, SolveStatus::Converged);
        assert!(report.final_residual < 1e-5);
        let w = p.w(&report.z).unwrap();
        let qmax = p.q().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(is_complementary_pair(&report.z, &w, 1e-4 * (1.0 + qmax)));
    }
}
