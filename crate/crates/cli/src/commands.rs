use anyhow::{bail, Context, Result};
use qstirling::asymptotics::{self, Order, Regime as Limit};
use qstirling::cycle::{
    surface_points, sweep_points, CycleParams, SweepAxis, SweepRange, SweepRow,
};
use qstirling::figures::Figure;
use qstirling::verify::{run_checks, VerifyOptions};
use qstirling::{Medium, Regime};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::output::{Cell, Report};

const CYCLE_COLUMNS: [&str; 24] = [
    "medium",
    "omega1",
    "omega2",
    "th",
    "tc",
    "r",
    "phi",
    "q_ab",
    "w_ab",
    "q_bc",
    "q_cd",
    "w_cd",
    "q_da",
    "w_total",
    "W_over_Tc",
    "q_h",
    "eta",
    "eta_rejected_heat",
    "eta_carnot",
    "eta_curzon_ahlborn",
    "t_eff_omega1",
    "t_eff_omega2",
    "regime",
    "surpasses_carnot",
];

pub fn params_meta(p: &CycleParams) -> Map<String, Value> {
    let v = json!({
        "medium": p.medium.as_str(),
        "omega1": p.omega1,
        "omega2": p.omega2,
        "th": p.t_hot,
        "tc": p.t_cold,
        "r": p.squeeze_r,
        "phi": p.squeeze_phi,
    });
    match v {
        Value::Object(m) => m,
        _ => unreachable!(),
    }
}

fn cycle_cells(row: &SweepRow) -> Vec<Cell> {
    let p = &row.params;
    let l = &row.ledger;
    let perf = &row.performance;
    let (te1, te2) = match perf.effective_temperature {
        Some((a, b)) => (Some(a), Some(b)),
        None => (None, None),
    };
    vec![
        p.medium.as_str().into(),
        p.omega1.into(),
        p.omega2.into(),
        p.t_hot.into(),
        p.t_cold.into(),
        p.squeeze_r.into(),
        p.squeeze_phi.into(),
        l.q_ab.into(),
        l.w_ab.into(),
        l.q_bc.into(),
        l.q_cd.into(),
        l.w_cd.into(),
        l.q_da.into(),
        perf.w_total.into(),
        row.work_over_tc().into(),
        perf.q_h.into(),
        perf.eta.into(),
        perf.eta_from_rejected_heat.into(),
        perf.eta_carnot.into(),
        perf.eta_curzon_ahlborn.into(),
        te1.into(),
        te2.into(),
        perf.regime.as_str().into(),
        perf.surpasses_carnot().into(),
    ]
}

fn evaluate_all(points: &[CycleParams]) -> Result<Vec<SweepRow>> {
    points
        .par_iter()
        .map(|p| SweepRow::evaluate(*p))
        .collect::<Result<Vec<_>, _>>()
        .context("evaluating cycle")
}

fn regime_notes(rows: &[SweepRow]) -> Vec<String> {
    let count = |f: &dyn Fn(&SweepRow) -> bool| rows.iter().filter(|r| f(r)).count();
    let mut notes = Vec::new();
    let degenerate = count(&|r| r.performance.regime == Regime::Degenerate);
    if degenerate > 0 {
        notes.push(format!(
            "{degenerate} degenerate cycle(s) (omega1 = omega2): zero ledger"
        ));
    }
    let idle = count(&|r| r.performance.regime == Regime::NotAnEngine);
    if idle > 0 {
        notes.push(format!(
            "{idle} point(s) with Q_H <= 0: not an engine, no efficiency"
        ));
    }
    let surpass = count(&|r| r.performance.surpasses_carnot());
    if surpass > 0 {
        notes.push(format!(
            "{surpass} of {} point(s) surpass Carnot",
            rows.len()
        ));
    }
    notes
}

pub fn cycle(params: CycleParams, mut meta: Map<String, Value>) -> Result<Report> {
    let row = SweepRow::evaluate(params)?;
    meta.insert("command".into(), "cycle".into());
    let mut report = Report::new(meta, CYCLE_COLUMNS.iter().map(|s| s.to_string()).collect());
    report.vertical = true;
    report.rows.push(cycle_cells(&row));
    let perf = &row.performance;
    report.notes.push(match perf.regime {
        Regime::Degenerate => {
            "degenerate cycle: omega1 = omega2, no frequency modulation, zero ledger".to_string()
        }
        Regime::NotAnEngine => "Q_H <= 0: not an engine, no efficiency".to_string(),
        Regime::Engine if perf.surpasses_carnot() => format!(
            "eta = {} > eta_C = {}: surpasses Carnot",
            crate::output::fmt_num(perf.eta.unwrap_or(f64::NAN)),
            crate::output::fmt_num(perf.eta_carnot)
        ),
        Regime::Engine => format!(
            "eta = {} <= eta_C = {}",
            crate::output::fmt_num(perf.eta.unwrap_or(f64::NAN)),
            crate::output::fmt_num(perf.eta_carnot)
        ),
    });
    Ok(report)
}

pub fn preset(figure: Figure, mut meta: Map<String, Value>, command: &str) -> Result<Report> {
    let preset = figure.preset();
    let points = preset.points();
    let params: Vec<CycleParams> = points.iter().map(|p| p.params).collect();
    let rows = evaluate_all(&params)?;
    meta.insert("command".into(), command.into());
    meta.insert("preset".into(), figure.as_str().into());
    meta.insert("description".into(), preset.description.into());
    meta.insert("base".into(), Value::Object(params_meta(&preset.base)));
    meta.insert(
        "axes".into(),
        preset
            .axes
            .iter()
            .map(|(k, v)| json!({ "key": k.label(), "values": v }))
            .collect(),
    );
    let mut report = Report::new(
        meta,
        preset.columns().iter().map(|s| s.to_string()).collect(),
    );
    report.rows = points
        .iter()
        .zip(&rows)
        .map(|(pt, row)| preset.row(pt, row).into_iter().map(Cell::Num).collect())
        .collect();
    report.notes = regime_notes(&rows);
    Ok(report)
}

fn axis_meta(axis: SweepAxis, range: &SweepRange) -> Value {
    json!({ "axis": axis.as_str(), "from": range.start(), "to": range.end(), "steps": range.steps() })
}

pub fn sweep(
    base: CycleParams,
    axis: SweepAxis,
    range: SweepRange,
    mut meta: Map<String, Value>,
) -> Result<Report> {
    let points = sweep_points(base, axis, &range)?;
    let rows = evaluate_all(&points)?;
    meta.insert("command".into(), "sweep".into());
    meta.insert("sweep".into(), axis_meta(axis, &range));
    let mut columns = vec![axis.label().to_string()];
    columns.extend(CYCLE_COLUMNS.iter().map(|s| s.to_string()));
    let mut report = Report::new(meta, columns);
    report.rows = rows
        .iter()
        .map(|r| {
            let mut cells = vec![Cell::from(r.params.axis_value(axis))];
            cells.extend(cycle_cells(r));
            cells
        })
        .collect();
    report.notes = regime_notes(&rows);
    Ok(report)
}

pub fn surface(
    base: CycleParams,
    first: (SweepAxis, SweepRange),
    second: (SweepAxis, SweepRange),
    mut meta: Map<String, Value>,
) -> Result<Report> {
    let points = surface_points(base, (first.0, &first.1), (second.0, &second.1))?;
    let rows = evaluate_all(&points)?;
    meta.insert("command".into(), "surface".into());
    meta.insert(
        "surface".into(),
        json!([axis_meta(first.0, &first.1), axis_meta(second.0, &second.1)]),
    );
    let mut columns = vec![first.0.label().to_string(), second.0.label().to_string()];
    columns.extend(CYCLE_COLUMNS.iter().map(|s| s.to_string()));
    let mut report = Report::new(meta, columns);
    report.rows = rows
        .iter()
        .map(|r| {
            let mut cells = vec![
                Cell::from(r.params.axis_value(first.0)),
                Cell::from(r.params.axis_value(second.0)),
            ];
            cells.extend(cycle_cells(r));
            cells
        })
        .collect();
    report.notes = regime_notes(&rows);
    Ok(report)
}

/// Geometric sequence from `from` to `to`.
pub fn geometric(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if !(from > 0.0 && to > 0.0 && from.is_finite() && to.is_finite()) {
        bail!("regime parameters must be positive and finite");
    }
    match steps {
        0 => bail!("at least one step is required"),
        1 if from != to => bail!("a single step needs from == to"),
        1 => Ok(vec![from]),
        _ => {
            let (a, b) = (from.ln(), to.ln());
            Ok((0..steps)
                .map(|i| {
                    if i + 1 == steps {
                        to
                    } else {
                        (a + (b - a) * i as f64 / (steps - 1) as f64).exp()
                    }
                })
                .collect())
        }
    }
}

pub fn limits(
    base: CycleParams,
    limit: Limit,
    order: Order,
    ks: &[f64],
    mut meta: Map<String, Value>,
) -> Result<Report> {
    meta.insert("command".into(), "limits".into());
    meta.insert("regime".into(), limit.as_str().into());
    meta.insert("order".into(), order.as_str().into());
    meta.insert("regime_parameters".into(), json!(ks));
    let label = match limit {
        Limit::LowT => "omega1/Tc",
        Limit::HighT => "omega2/Th",
    };
    let columns = [
        label,
        "th",
        "tc",
        "W_exact",
        "W_approx",
        "rel_error",
        "omega2_star",
        "omega2_stationary",
        "eta_exact_at_max",
        "eta_mw_analytic",
    ];
    let mut report = Report::new(meta, columns.iter().map(|s| s.to_string()).collect());
    let rows = ks
        .par_iter()
        .map(|&k| -> Result<Vec<Cell>> {
            let p = asymptotics::regime_point(&base, limit, k)?;
            let rep = asymptotics::regime_report(&p, limit, order)?;
            let eta_at_star = match rep.omega2_star {
                Some(s) if s > p.omega1 => {
                    SweepRow::evaluate(CycleParams { omega2: s, ..p })?
                        .performance
                        .eta
                }
                _ => None,
            };
            let rel = (rep.w_exact != 0.0).then(|| rep.relative_error());
            Ok(vec![
                k.into(),
                p.t_hot.into(),
                p.t_cold.into(),
                rep.w_exact.into(),
                rep.w_approx.into(),
                rel.into(),
                rep.omega2_star.into(),
                rep.omega2_stationary.into(),
                eta_at_star.into(),
                rep.eta_mw.into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    if base.omega1 == base.omega2 {
        report
            .notes
            .push("degenerate cycle: exact work is zero, relative error undefined".into());
    }
    if base.medium == Medium::TwoLevel && limit == Limit::HighT {
        report.notes.push("the two-level high-temperature work has no interior maximum; eta_mw is evaluated at omega2".into());
    }
    report.rows = rows;
    Ok(report)
}

pub fn optimize(
    base: CycleParams,
    lo: f64,
    hi: f64,
    expansion: Option<(Limit, Order)>,
    mut meta: Map<String, Value>,
) -> Result<Report> {
    meta.insert("command".into(), "optimize".into());
    meta.insert("lo".into(), lo.into());
    meta.insert("hi".into(), hi.into());
    if let Some((l, o)) = expansion {
        meta.insert("regime".into(), l.as_str().into());
        meta.insert("order".into(), o.as_str().into());
    }
    let columns = [
        "objective",
        "omega2_at_max",
        "W_max",
        "at_boundary",
        "evaluations",
        "eta_at_max",
        "omega2_analytic",
        "omega2_stationary",
    ];
    let mut report = Report::new(meta, columns.iter().map(|s| s.to_string()).collect());
    let eta_at = |w2: f64| -> Result<Option<f64>> {
        Ok(SweepRow::evaluate(CycleParams { omega2: w2, ..base })?
            .performance
            .eta)
    };
    let exact = asymptotics::numeric_max_work(&base, lo, hi)?;
    report.rows.push(vec![
        "W_exact".into(),
        exact.x.into(),
        exact.value.into(),
        exact.at_boundary.into(),
        (exact.evaluations as f64).into(),
        eta_at(exact.x)?.into(),
        Cell::Num(None),
        Cell::Num(None),
    ]);
    if exact.at_boundary {
        report.notes.push(
            "the exact work peaks at the end of the search range: no interior maximum".into(),
        );
    }
    if let Some((limit, order)) = expansion {
        let f =
            |w2| asymptotics::approximate_work(&CycleParams { omega2: w2, ..base }, limit, order);
        let m = asymptotics::numeric_max_of(f, lo, hi)?;
        report.rows.push(vec![
            format!("W_approx_{}_{}", limit.as_str(), order.as_str()).into(),
            m.x.into(),
            m.value.into(),
            m.at_boundary.into(),
            (m.evaluations as f64).into(),
            eta_at(m.x)?.into(),
            asymptotics::analytic_omega2_star(&base, limit).into(),
            asymptotics::stationary_omega2_star(&base, limit).into(),
        ]);
        if m.at_boundary {
            report
                .notes
                .push("the expansion peaks at the end of the search range".into());
        }
    }
    Ok(report)
}

pub fn verify(opts: VerifyOptions, mut meta: Map<String, Value>) -> (Report, bool) {
    meta.insert("command".into(), "verify".into());
    meta.insert("tolerance_scale".into(), opts.tolerance_scale.into());
    if opts.inject_sign_error {
        meta.insert("inject_sign_error".into(), true.into());
    }
    let result = run_checks(&opts);
    let columns = ["status", "check", "gating", "detail"];
    let mut report = Report::new(meta, columns.iter().map(|s| s.to_string()).collect());
    for c in &result.checks {
        let status = match (c.passed, c.gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "INFO",
        };
        report.rows.push(vec![
            status.into(),
            c.name.into(),
            c.gating.into(),
            c.detail.clone().into(),
        ]);
    }
    let failures: Vec<&str> = result.failures().map(|c| c.name).collect();
    if !failures.is_empty() {
        report
            .notes
            .push(format!("failed: {}", failures.join(", ")));
    }
    (report, result.all_passed())
}
