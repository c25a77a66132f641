//! Re-evaluation benchmark: one ongoing evaluation versus bind-then-evaluate.
//!
//! The ongoing result stays valid as time passes, so it is computed once;
//! the bind-then-evaluate baseline must re-run for every reference time an
//! application asks about. The interesting number is the break-even count
//! `ceil(T_ongoing / T_bind)`: after that many re-evaluations the ongoing
//! evaluation has paid for itself.
//!
//! Timings use the monotonic clock, take the median over the configured
//! repetitions, and discard one warm-up run.

use std::time::Instant;

use thiserror::Error;

use crate::algebra::{eval, PlanError, QueryPlan};
use crate::oracle::{bind_catalog, breakpoints, fixed_eval};
use crate::relation::Catalog;
use crate::tick::Tick;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// One evaluation on the ongoing engine.
    Ongoing,
    /// Bind the database at a reference time, then evaluate with fixed
    /// semantics.
    Bind,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ongoing" => Ok(Mode::Ongoing),
            "bind" => Ok(Mode::Bind),
            other => Err(format!("unknown mode '{other}', expected ongoing|bind")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub modes: Vec<Mode>,
    pub repetitions: usize,
    /// Reference times for the bind mode. Empty means one sweep point: the
    /// largest breakpoint of the inputs (the "current time" use case).
    pub reference_times: Vec<Tick>,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("repetitions must be at least 1")]
    NoRepetitions,
    #[error(transparent)]
    Plan(#[from] PlanError),
}

/// One line of the benchmark report.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub mode: Mode,
    pub wall_time_median: f64,
    pub result_rows: usize,
    /// On the ongoing row: `ceil(T_ongoing / T_bind)` against the latest
    /// bind measurement.
    pub break_even_n: Option<u64>,
    /// On bind rows: the reference time measured.
    pub rt: Option<Tick>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// Renders the report as CSV with columns
    /// `mode,wall_time_median,result_rows,break_even_n,rt`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("mode,wall_time_median,result_rows,break_even_n,rt\n");
        for row in &self.rows {
            let mode = match row.mode {
                Mode::Ongoing => "ongoing",
                Mode::Bind => "bind",
            };
            let break_even = row
                .break_even_n
                .map(|n| n.to_string())
                .unwrap_or_default();
            let rt = row.rt.map(|t| t.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{mode},{:.6},{},{break_even},{rt}\n",
                row.wall_time_median, row.result_rows
            ));
        }
        out
    }
}

fn median_secs(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).expect("finite timings"));
    samples[samples.len() / 2]
}

fn time_runs<T>(repetitions: usize, mut run: impl FnMut() -> T) -> (f64, T) {
    let mut result = run(); // warm-up, discarded from timing
    let mut samples = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let started = Instant::now();
        result = run();
        samples.push(started.elapsed().as_secs_f64());
    }
    (median_secs(samples), result)
}

/// Runs the configured benchmark modes over one query and catalog.
pub fn run_bench(
    plan: &QueryPlan,
    catalog: &Catalog,
    config: &BenchConfig,
) -> Result<BenchReport, BenchError> {
    if config.repetitions == 0 {
        return Err(BenchError::NoRepetitions);
    }
    let reference_times = if config.reference_times.is_empty() {
        let bps = breakpoints(plan, catalog);
        vec![*bps.last().expect("breakpoints are never empty")]
    } else {
        config.reference_times.clone()
    };

    let mut report = BenchReport::default();
    let mut ongoing_time = None;
    let mut last_bind_time = None;

    for &mode in &config.modes {
        match mode {
            Mode::Ongoing => {
                eval(plan, catalog)?; // surface plan errors before timing
                let (median, result) = time_runs(config.repetitions, || {
                    eval(plan, catalog).expect("validated plan")
                });
                ongoing_time = Some(median);
                report.rows.push(BenchRow {
                    mode,
                    wall_time_median: median,
                    result_rows: result.len(),
                    break_even_n: None,
                    rt: None,
                });
            }
            Mode::Bind => {
                for &rt in &reference_times {
                    let bound_plan = plan.bind_scalar_literals(rt);
                    fixed_eval(&bound_plan, &bind_catalog(catalog, rt))?;
                    let (median, result) = time_runs(config.repetitions, || {
                        let bound = bind_catalog(catalog, rt);
                        fixed_eval(&bound_plan, &bound).expect("validated plan")
                    });
                    last_bind_time = Some(median);
                    report.rows.push(BenchRow {
                        mode,
                        wall_time_median: median,
                        result_rows: result.len(),
                        break_even_n: None,
                        rt: Some(rt),
                    });
                }
            }
        }
    }

    if let (Some(ongoing), Some(bind)) = (ongoing_time, last_bind_time) {
        let n = (ongoing / bind).ceil().max(1.0) as u64;
        for row in &mut report.rows {
            if row.mode == Mode::Ongoing {
                row.break_even_n = Some(n);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_query, typecheck};
    use crate::synth::{generate, DatasetSpec, IntervalShape};

    fn small_setup() -> (QueryPlan, Catalog) {
        let spec = DatasetSpec::new(300, 15.0, IntervalShape::Expanding, 1000, 11);
        let mut catalog = Catalog::new();
        catalog.insert("R", generate(&spec).unwrap());
        let plan = typecheck(
            &parse_query("select vt overlaps [900, 1000) (R)").unwrap(),
            &catalog,
        )
        .unwrap();
        (plan, catalog)
    }

    #[test]
    fn rejects_zero_repetitions() {
        let (plan, catalog) = small_setup();
        let config = BenchConfig {
            modes: vec![Mode::Ongoing],
            repetitions: 0,
            reference_times: vec![],
        };
        assert!(matches!(
            run_bench(&plan, &catalog, &config),
            Err(BenchError::NoRepetitions)
        ));
    }

    #[test]
    fn produces_rows_and_break_even() {
        let (plan, catalog) = small_setup();
        let config = BenchConfig {
            modes: vec![Mode::Ongoing, Mode::Bind],
            repetitions: 3,
            reference_times: vec![],
        };
        let report = run_bench(&plan, &catalog, &config).unwrap();
        assert_eq!(report.rows.len(), 2);
        let ongoing = &report.rows[0];
        assert_eq!(ongoing.mode, Mode::Ongoing);
        assert!(ongoing.break_even_n.is_some());
        let bind = &report.rows[1];
        assert!(bind.rt.is_some());
        let csv = report.to_csv();
        assert!(csv.starts_with("mode,wall_time_median,result_rows,break_even_n,rt\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}
