//! Scenario sweeps: every configured goal and growth rate, run in parallel,
//! collected into [`ResultTable`]s in a fixed order.
//!
//! Order is goal-major, then growth rate, then pathway kind (quasi-stationary
//! before constant-rate), with the delay comparison last within a goal/rate
//! pair. Per-rate cost-curve and power-law tables follow. Results do not
//! depend on the thread count.

use sha2::{Digest, Sha256};

use rayon::prelude::*;

use crate::analysis::{
    cost_curve, cost_fractions_for_goals, delay_comparison, fit_power_law_points,
    long_horizon_approx, rate_grid, warming_from_goal, REFERENCE_GOAL_PGC,
};
use crate::config::{OutputKind, PathwaySelection, ScenarioConfig};
use crate::economy::{EconomyParams, TimeGrid};
use crate::error::{Error, Result};
use crate::expenditure::discounted_total;
use crate::mac::{carbon_price, MacCurve};
use crate::pathway::{
    constant_rate_pathway, quasi_stationary_for_goal, solve_constant_rate, Pathway, PathwayKind,
};
use crate::table::{Column, ResultTable};
use crate::units::{convert_gtco2_pgc, convert_pgc_gtco2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepOptions {
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
}

/// Hex SHA-256 of the canonical TOML form of `config`.
pub fn config_hash(config: &ScenarioConfig) -> String {
    Sha256::digest(config.to_toml().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn run_sweep(config: &ScenarioConfig) -> Result<Vec<ResultTable>> {
    run_sweep_with(config, SweepOptions::default())
}

/// Runs every cell of the sweep. Failing cells (infeasible goals, solver
/// failures) become flagged tables whose footer records the error; only an
/// invalid config or thread-pool failure aborts the sweep.
pub fn run_sweep_with(config: &ScenarioConfig, options: SweepOptions) -> Result<Vec<ResultTable>> {
    config.validate()?;
    let ctx = Context {
        grid: config.time_grid()?,
        curve: config.curve(),
        hash: config_hash(config),
        config,
    };
    let jobs = plan(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads)
        .build()
        .map_err(|e| Error::domain(format!("cannot start thread pool: {e}")))?;
    let tables: Vec<Vec<ResultTable>> =
        pool.install(|| jobs.par_iter().map(|job| ctx.run(job)).collect());
    Ok(tables.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Copy)]
enum Job {
    Cell {
        goal_pgc: f64,
        rate: f64,
        kind: PathwayKind,
    },
    Delay {
        goal_pgc: f64,
        rate: f64,
    },
    CostCurve {
        rate: f64,
    },
    PowerLaw {
        rate: f64,
    },
}

fn plan(config: &ScenarioConfig) -> Vec<Job> {
    let wants = |o: OutputKind| config.outputs.contains(&o);
    let per_cell =
        wants(OutputKind::Pathway) || wants(OutputKind::Expenditure) || wants(OutputKind::Burden);
    let kinds: &[PathwayKind] = match config.pathway_kind {
        PathwaySelection::QuasiStationary => &[PathwayKind::QuasiStationary],
        PathwaySelection::ConstantRate => &[PathwayKind::ConstantRate],
        PathwaySelection::Both => &[PathwayKind::QuasiStationary, PathwayKind::ConstantRate],
    };
    let mut jobs = Vec::new();
    for &goal_pgc in &config.goals_pgc {
        for &rate in &config.growth_rates {
            if per_cell {
                jobs.extend(kinds.iter().map(|&kind| Job::Cell {
                    goal_pgc,
                    rate,
                    kind,
                }));
            }
            if wants(OutputKind::Delay) {
                jobs.push(Job::Delay { goal_pgc, rate });
            }
        }
    }
    if wants(OutputKind::CostCurve) {
        jobs.extend(
            config
                .growth_rates
                .iter()
                .map(|&rate| Job::CostCurve { rate }),
        );
    }
    if wants(OutputKind::PowerLaw) {
        jobs.extend(
            config
                .growth_rates
                .iter()
                .map(|&rate| Job::PowerLaw { rate }),
        );
    }
    jobs
}

fn short_kind(kind: PathwayKind) -> &'static str {
    match kind {
        PathwayKind::QuasiStationary => "qs",
        PathwayKind::ConstantRate => "ck",
        PathwayKind::Custom => "custom",
    }
}

fn cell_name(
    output: OutputKind,
    kind: Option<PathwayKind>,
    goal_pgc: Option<f64>,
    rate: f64,
) -> String {
    let mut name = output.as_str().to_string();
    if let Some(kind) = kind {
        name.push('_');
        name.push_str(short_kind(kind));
    }
    if let Some(goal) = goal_pgc {
        name.push_str(&format!("_goal{goal}"));
    }
    name.push_str(&format!("_r{rate}"));
    name
}

struct Context<'a> {
    config: &'a ScenarioConfig,
    grid: TimeGrid,
    curve: MacCurve,
    hash: String,
}

impl Context<'_> {
    fn economy(&self, rate: f64) -> EconomyParams {
        self.config.economy().with_growth_rate(rate)
    }

    fn header(&self, table: &mut ResultTable, economy: &EconomyParams) {
        table.note(format!("config_sha256={}", self.hash));
        table.note(format!(
            "growth_rate={} theta={} sigma={} delta={} g0={} mu0={} alpha={} nu={} horizon_yr={} step_yr={}",
            economy.r,
            economy.theta,
            economy.sigma(),
            economy.delta,
            economy.g0,
            economy.mu0,
            self.curve.alpha,
            self.curve.nu,
            self.grid.horizon(),
            self.grid.step()
        ));
    }

    fn goal_note(&self, table: &mut ResultTable, goal_pgc: f64) {
        let climate = &self.config.climate;
        table.note(format!(
            "goal_pgc={goal_pgc} goal_gtco2={} warming_k={}",
            convert_pgc_gtco2(goal_pgc),
            warming_from_goal(goal_pgc, climate.tcre, climate.baseline_warming)
        ));
    }

    fn failed(&self, mut table: ResultTable, economy: &EconomyParams, err: &Error) -> ResultTable {
        table.rows.clear();
        table.footer.clear();
        let flag = if matches!(err, Error::Infeasible(_)) {
            "infeasible"
        } else {
            "error"
        };
        table.push_flag_row(flag);
        self.header(&mut table, economy);
        table.note(format!("error_kind={} error={}", err.kind(), err));
        table
    }

    fn run(&self, job: &Job) -> Vec<ResultTable> {
        match *job {
            Job::Cell {
                goal_pgc,
                rate,
                kind,
            } => self.cell(goal_pgc, rate, kind),
            Job::Delay { goal_pgc, rate } => vec![self.delay(goal_pgc, rate)],
            Job::CostCurve { rate } => vec![self.cost_curve(rate)],
            Job::PowerLaw { rate } => vec![self.power_law(rate)],
        }
    }

    fn cell(&self, goal_pgc: f64, rate: f64, kind: PathwayKind) -> Vec<ResultTable> {
        let economy = self.economy(rate);
        let outputs: Vec<OutputKind> = [
            OutputKind::Pathway,
            OutputKind::Expenditure,
            OutputKind::Burden,
        ]
        .into_iter()
        .filter(|o| self.config.outputs.contains(o))
        .collect();
        let solved = solve_cell(convert_pgc_gtco2(goal_pgc), &self.grid, &economy, kind);
        outputs
            .into_iter()
            .map(|output| {
                let name = cell_name(output, Some(kind), Some(goal_pgc), rate);
                let empty = empty_table(output, name.clone());
                let (path, solver_note) = match &solved {
                    Ok(ok) => ok,
                    Err(err) => {
                        let mut t = self.failed(empty, &economy, err);
                        self.goal_note(&mut t, goal_pgc);
                        return t;
                    }
                };
                let built = match output {
                    OutputKind::Pathway => Ok(pathway_rows(empty, path)),
                    OutputKind::Expenditure => expenditure_rows(empty, path, &economy, &self.curve),
                    _ => Ok(burden_rows(empty, path, &economy, &self.curve)),
                };
                match built {
                    Ok(mut t) => {
                        self.header(&mut t, &economy);
                        self.goal_note(&mut t, goal_pgc);
                        t.note(format!("kind={} {solver_note}", kind.as_str()));
                        t.note(format!("cumulative_emissions_gtco2={}", path.total_emissions()));
                        if path.heuristic_sigma() {
                            t.note("heuristic_sigma=true: quasi-stationary form applied with sigma > 0 or delta > 0");
                        }
                        t
                    }
                    Err(err) => self.failed(empty_table(output, name), &economy, &err),
                }
            })
            .collect()
    }

    fn delay(&self, goal_pgc: f64, rate: f64) -> ResultTable {
        let economy = self.economy(rate);
        let mut table = ResultTable::new(
            cell_name(OutputKind::Delay, None, Some(goal_pgc), rate),
            vec![
                Column::new("t", "yr"),
                Column::new("k_qs", "1/yr"),
                Column::new("k_ck", "1/yr"),
                Column::new("m_qs", "GtCO2/yr"),
                Column::new("m_ck", "GtCO2/yr"),
                Column::new("burden_qs", "1"),
                Column::new("burden_ck", "1"),
            ],
        );
        let cmp = match delay_comparison(
            convert_pgc_gtco2(goal_pgc),
            &self.grid,
            &economy,
            &self.curve,
        ) {
            Ok(cmp) => cmp,
            Err(err) => {
                let mut t = self.failed(table, &economy, &err);
                self.goal_note(&mut t, goal_pgc);
                return t;
            }
        };
        let (qs, ck) = (&cmp.quasi_stationary, &cmp.constant_rate);
        let (bq, bc) = (
            &cmp.quasi_stationary_expenditure.burden,
            &cmp.constant_rate_expenditure.burden,
        );
        for i in 0..self.grid.len() {
            table.push_numbers(&[
                self.grid.time(i),
                qs.k()[i],
                ck.k()[i],
                qs.m()[i],
                ck.m()[i],
                bq[i],
                bc[i],
            ]);
        }
        self.header(&mut table, &economy);
        self.goal_note(&mut table, goal_pgc);
        table.note(format!(
            "multiplier_c={} lambda_ratio={} qs_residual_gtco2={} k_const={}",
            cmp.multiplier.c, cmp.multiplier.lambda_ratio, cmp.multiplier.residual, cmp.k_const
        ));
        table.note(format!(
            "present_saving={} terminal_gap={}",
            cmp.present_saving, cmp.terminal_gap
        ));
        table
    }

    fn cost_curve(&self, rate: f64) -> ResultTable {
        let economy = self.economy(rate);
        let mut table = ResultTable::new(
            cell_name(OutputKind::CostCurve, None, None, rate),
            vec![
                Column::new("k", "1/yr"),
                Column::new("M", "GtCO2"),
                Column::new("M", "PgC"),
                Column::new("E", "billion$"),
                Column::new("E_long_horizon", "billion$"),
                Column::new("exp(-chi*T)", "1"),
            ],
        );
        let cc = &self.config.cost_curve;
        let horizon = self.grid.horizon();
        let points = match cost_curve(
            &rate_grid(cc.k_min, cc.k_max, cc.points),
            horizon,
            &economy,
            &self.curve,
        ) {
            Ok(p) => p,
            Err(err) => return self.failed(table, &economy, &err),
        };
        for p in &points {
            let approx =
                long_horizon_approx(p.m, horizon, &economy, &self.curve).unwrap_or(f64::NAN);
            let tail = (-(p.k_const + economy.sigma() - economy.r) * horizon).exp();
            table.push_numbers(&[p.k_const, p.m, convert_gtco2_pgc(p.m), p.e, approx, tail]);
        }
        self.header(&mut table, &economy);
        table.note("E and M from closed forms for constant decarbonization rates");
        table.note("E_long_horizon assumes exp(-chi*T) << 1 with chi = k + sigma - r");
        table
    }

    fn power_law(&self, rate: f64) -> ResultTable {
        let economy = self.economy(rate);
        let mut table = ResultTable::new(
            cell_name(OutputKind::PowerLaw, None, None, rate),
            vec![
                Column::new("goal", "PgC"),
                Column::new("goal", "GtCO2"),
                Column::new("warming", "K"),
                Column::new("multiplier_c", "1/trillion$"),
                Column::new("cost_fraction", "1"),
            ],
        );
        let goals = &self.config.power_law.goals_pgc;
        let result =
            cost_fractions_for_goals(goals, &self.grid, &economy, &self.curve).and_then(|rows| {
                let fractions: Vec<f64> = rows.iter().map(|(f, _)| *f).collect();
                fit_power_law_points(goals, &fractions, REFERENCE_GOAL_PGC).map(|fit| (rows, fit))
            });
        let (rows, fit) = match result {
            Ok(ok) => ok,
            Err(err) => return self.failed(table, &economy, &err),
        };
        let climate = &self.config.climate;
        for (&goal, (f, sol)) in goals.iter().zip(&rows) {
            table.push_numbers(&[
                goal,
                convert_pgc_gtco2(goal),
                warming_from_goal(goal, climate.tcre, climate.baseline_warming),
                sol.c,
                *f,
            ]);
        }
        self.header(&mut table, &economy);
        table.note(format!(
            "f1={} n={} n_se={} r_squared={} halving_factor={} reference_goal_pgc={}",
            fit.f1,
            fit.n,
            fit.n_se,
            fit.r_squared,
            fit.halving_factor(),
            fit.m01
        ));
        table
    }
}

fn solve_cell(
    goal: f64,
    grid: &TimeGrid,
    economy: &EconomyParams,
    kind: PathwayKind,
) -> Result<(Pathway, String)> {
    match kind {
        PathwayKind::ConstantRate => {
            let k = solve_constant_rate(goal, grid, economy)?;
            let path = constant_rate_pathway(k, grid, economy)?;
            let note = format!(
                "k_const={k} solver_residual_gtco2={}",
                path.total_emissions() - goal
            );
            Ok((path, note))
        }
        _ => {
            let (path, sol) = quasi_stationary_for_goal(goal, grid, economy)?;
            let note = format!(
                "multiplier_c={} lambda_ratio={} solver_residual_gtco2={} iterations={}",
                sol.c, sol.lambda_ratio, sol.residual, sol.iterations
            );
            Ok((path, note))
        }
    }
}

fn empty_table(output: OutputKind, name: String) -> ResultTable {
    let columns = match output {
        OutputKind::Pathway => vec![
            Column::new("t", "yr"),
            Column::new("K", "1"),
            Column::new("k", "1/yr"),
            Column::new("m", "GtCO2/yr"),
            Column::new("M_cum", "GtCO2"),
        ],
        OutputKind::Expenditure => vec![
            Column::new("t", "yr"),
            Column::new("carbon_price", "$/tCO2"),
            Column::new("P_mu", "billion$/yr"),
            Column::new("P_g", "billion$/yr"),
            Column::new("P", "billion$/yr"),
            Column::new("P_g_over_P_mu", "1"),
            Column::new("E", "billion$"),
        ],
        _ => vec![
            Column::new("t", "yr"),
            Column::new("exponent_(nu-1)K-sigma*t", "1"),
            Column::new("burden", "1"),
        ],
    };
    ResultTable::new(name, columns)
}

fn pathway_rows(mut table: ResultTable, path: &Pathway) -> ResultTable {
    let grid = path.grid();
    for i in 0..grid.len() {
        table.push_numbers(&[
            grid.time(i),
            path.big_k()[i],
            path.k()[i],
            path.m()[i],
            path.m_cum()[i],
        ]);
    }
    table
}

fn expenditure_rows(
    mut table: ResultTable,
    path: &Pathway,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> Result<ResultTable> {
    let series = discounted_total(path, economy, curve)?;
    let grid = path.grid();
    for i in 0..grid.len() {
        let (pm, pg) = (series.p_mu[i], series.p_g[i]);
        table.push_numbers(&[
            grid.time(i),
            carbon_price(path.big_k()[i], curve),
            pm,
            pg,
            pm + pg,
            pg / pm,
            series.discounted_cumulative[i],
        ]);
    }
    Ok(table)
}

fn burden_rows(
    mut table: ResultTable,
    path: &Pathway,
    economy: &EconomyParams,
    curve: &MacCurve,
) -> ResultTable {
    let grid = path.grid();
    for i in 0..grid.len() {
        let t = grid.time(i);
        let big_k = path.big_k()[i];
        table.push_numbers(&[
            t,
            (curve.nu - 1.0) * big_k - economy.sigma() * t,
            crate::expenditure::burden(t, big_k, path.k()[i], economy, curve),
        ]);
    }
    table
}
