//! Command dispatch: turns a resolved configuration into an output table.

use crate::audit;
use crate::config::{CommandKind, RunConfig};
use crate::error::{CliError, EXIT_AUDIT_VIOLATION, EXIT_OK};
use crate::output::{Cell, Output};
use chsh_core::chsh::{
    bell_operator_strong, generalized_correlation, optimize_restricted, s_weak_quantum, Objective,
};
use chsh_core::eprb::singlet_state;
use chsh_core::lhv::{
    convergence_sweep, model_by_name, s_strong, s_weak_lhv, sample_ensemble, ChshEstimate,
};
use chsh_core::linalg::{expectation, hermitian_eigensystem};
use chsh_core::rng::derive_seed;

pub struct RunOutcome {
    pub output: Output,
    pub exit: i32,
}

pub fn run(cfg: &RunConfig) -> Result<RunOutcome, CliError> {
    let output = match cfg.command {
        CommandKind::Quantum => quantum(cfg)?,
        CommandKind::Lhv => lhv(cfg)?,
        CommandKind::Sweep => sweep(cfg)?,
        CommandKind::Optimize => optimize(cfg)?,
        CommandKind::Audit => return audit_run(cfg),
    };
    Ok(RunOutcome {
        output,
        exit: EXIT_OK,
    })
}

fn quantum(cfg: &RunConfig) -> Result<Output, CliError> {
    let ac = cfg.angle_config();
    let mut out = Output::new(vec!["quantity", "value"]);
    let mut push = |name: &'static str, value: f64| {
        out.push(vec![Cell::Text(name.to_string()), Cell::Real(value)]);
    };
    push("e_ab", generalized_correlation(1, 1, &ac.a, &ac.b)?);
    push(
        "e_ab_prime",
        generalized_correlation(2, 2, &ac.a, &ac.b_prime)?,
    );
    push(
        "e_aprime_b",
        generalized_correlation(3, 3, &ac.a_prime, &ac.b)?,
    );
    push(
        "e_aprime_bprime",
        generalized_correlation(4, 4, &ac.a_prime, &ac.b_prime)?,
    );
    push("s_weak_quantum", s_weak_quantum(&ac));

    let bell = bell_operator_strong(&ac);
    push(
        "bell_expectation_abs",
        expectation(&singlet_state(), &bell)?.abs(),
    );
    let eig = hermitian_eigensystem(&bell)?;
    push("bell_eigenvalue_min", eig.eigenvalues[0]);
    push("bell_eigenvalue_max", eig.eigenvalues[3]);
    Ok(out)
}

fn estimate_row(label: &str, est: &ChshEstimate<f64>) -> Vec<Cell> {
    let count = |k: i32| Cell::UInt(*est.per_term_histogram.get(&k).unwrap_or(&0));
    vec![
        Cell::Text(label.to_string()),
        Cell::UInt(est.n_pairs as u64),
        Cell::Text(est.dof_note.label().to_string()),
        Cell::Real(est.value),
        count(-4),
        count(-2),
        count(0),
        count(2),
        count(4),
    ]
}

fn lhv(cfg: &RunConfig) -> Result<Output, CliError> {
    let model = model_by_name::<f64>(&cfg.model).map_err(|e| CliError::Usage(e.to_string()))?;
    let ac = cfg.angle_config();
    let n = cfg.n_pairs as usize;
    let mut out = Output::new(vec![
        "estimator",
        "n_pairs",
        "dof",
        "value",
        "term_minus4",
        "term_minus2",
        "term_zero",
        "term_plus2",
        "term_plus4",
    ]);

    if model.supports_counterfactuals() {
        let ens = sample_ensemble(model.as_ref(), n, derive_seed(cfg.seed, &[0]))?;
        let est = s_strong(&ens, model.as_ref(), &ac)?;
        out.push(estimate_row("strong", &est));
    }

    let ensembles: Vec<_> = (1..=4u64)
        .map(|set| sample_ensemble(model.as_ref(), n, derive_seed(cfg.seed, &[set])))
        .collect::<Result<_, _>>()?;
    let est = s_weak_lhv(
        [&ensembles[0], &ensembles[1], &ensembles[2], &ensembles[3]],
        model.as_ref(),
        &ac,
    )?;
    out.push(estimate_row("weak", &est));
    Ok(out)
}

/// Ensemble sizes for a sweep: decades from 100 up to the configured size.
fn sweep_sizes(n_pairs: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut n = 100usize;
    while n <= n_pairs {
        sizes.push(n);
        match n.checked_mul(10) {
            Some(next) => n = next,
            None => break,
        }
    }
    if sizes.is_empty() {
        sizes.push(n_pairs);
    }
    sizes
}

fn sweep(cfg: &RunConfig) -> Result<Output, CliError> {
    let model = model_by_name::<f64>(&cfg.model).map_err(|e| CliError::Usage(e.to_string()))?;
    let sizes = sweep_sizes(cfg.n_pairs as usize);
    let rows = convergence_sweep(
        model.as_ref(),
        &cfg.angle_config(),
        &sizes,
        cfg.reps as usize,
        cfg.seed,
    )?;
    let mut out = Output::new(vec!["n", "mean_s_weak", "max_s_weak", "stddev"]);
    for row in rows {
        out.push(vec![
            Cell::UInt(row.n as u64),
            Cell::Real(row.mean),
            Cell::Real(row.max),
            Cell::Real(row.stddev),
        ]);
    }
    Ok(out)
}

fn optimize(cfg: &RunConfig) -> Result<Output, CliError> {
    let (angles, value) = optimize_restricted::<f64>(
        Objective::SWeakQuantum,
        cfg.resolution as usize,
        [0.0; 4],
        [true; 4],
    )?;
    let mut out = Output::new(vec![
        "a_deg",
        "a_prime_deg",
        "b_deg",
        "b_prime_deg",
        "s_weak_quantum",
    ]);
    let mut row: Vec<Cell> = angles
        .iter()
        .map(|rad| Cell::Real(rad.to_degrees().rem_euclid(360.0)))
        .collect();
    row.push(Cell::Real(value));
    out.push(row);
    Ok(out)
}

fn audit_run(cfg: &RunConfig) -> Result<RunOutcome, CliError> {
    let (rows, violated) = audit::run_audit(cfg)?;
    Ok(RunOutcome {
        output: audit::report_to_output(&rows),
        exit: if violated {
            EXIT_AUDIT_VIOLATION
        } else {
            EXIT_OK
        },
    })
}
