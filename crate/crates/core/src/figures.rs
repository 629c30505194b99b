//! Parameter presets that regenerate the data behind each reference plot,
//! and a first-difference monotonicity check over the resulting tables.
//!
//! Every preset works in units where `ω1 = T_c = 1` unless an axis says
//! otherwise, so work is reported as `W/T_c`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::cycle::{CycleParams, Medium, SweepRow};
use crate::error::{Error, Result};

/// A swept coordinate of a preset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Key {
    /// `ω2/ω1`.
    OmegaRatio,
    /// `T_h/T_c`.
    TempRatio,
    /// `T_c/T_h`.
    InverseTempRatio,
    /// Hot-bath squeeze `r`.
    Squeeze,
}

impl Key {
    pub fn label(self) -> &'static str {
        match self {
            Key::OmegaRatio => "omega2/omega1",
            Key::TempRatio => "Th/Tc",
            Key::InverseTempRatio => "Tc/Th",
            Key::Squeeze => "r",
        }
    }

    fn apply(self, mut p: CycleParams, v: f64) -> CycleParams {
        match self {
            Key::OmegaRatio => p.omega2 = v * p.omega1,
            Key::TempRatio => p.t_hot = v * p.t_cold,
            Key::InverseTempRatio => p.t_hot = p.t_cold / v,
            Key::Squeeze => p.squeeze_r = v,
        }
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    WorkOverTc,
    Efficiency,
}

/// Evenly spaced inclusive grid.
pub fn linspace(start: f64, end: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..steps)
            .map(|i| {
                if i + 1 == steps {
                    end
                } else {
                    start + (end - start) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

const R_SERIES: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// A figure's base point, axes (outermost first) and plotted quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub name: &'static str,
    pub description: &'static str,
    pub base: CycleParams,
    pub axes: Vec<(Key, Vec<f64>)>,
    pub quantity: Quantity,
    /// Keys along which the quantity should not decrease.
    pub increasing_in: Vec<Key>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
}

impl Figure {
    pub const ALL: [Figure; 9] = [
        Figure::Fig1,
        Figure::Fig2,
        Figure::Fig3,
        Figure::Fig4,
        Figure::Fig5,
        Figure::Fig6,
        Figure::Fig7,
        Figure::Fig8,
        Figure::Fig9,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
            Figure::Fig7 => "fig7",
            Figure::Fig8 => "fig8",
            Figure::Fig9 => "fig9",
        }
    }

    pub fn preset(self) -> FigurePreset {
        let base = |medium, omega2, t_hot| CycleParams {
            medium,
            omega1: 1.0,
            omega2,
            t_hot,
            t_cold: 1.0,
            squeeze_r: 0.0,
            squeeze_phi: 0.0,
        };
        let r = || (Key::Squeeze, R_SERIES.to_vec());
        use Key::*;
        use Medium::*;
        use Quantity::*;
        let (description, base, axes, quantity, increasing_in) = match self {
            Figure::Fig1 => (
                "two-level W/Tc against omega2/omega1 at Th = 2Tc",
                base(TwoLevel, 5.0, 2.0),
                vec![(OmegaRatio, linspace(1.0, 10.0, 37)), r()],
                WorkOverTc,
                vec![Squeeze],
            ),
            Figure::Fig2 => (
                "two-level W/Tc against Th/Tc at omega2 = 5 omega1",
                base(TwoLevel, 5.0, 2.0),
                vec![(TempRatio, linspace(1.05, 5.0, 80)), r()],
                WorkOverTc,
                vec![Squeeze],
            ),
            Figure::Fig3 => (
                "two-level efficiency against r at omega2 = 5 omega1",
                base(TwoLevel, 5.0, 2.0),
                vec![
                    (TempRatio, vec![1.1, 1.5, 2.0, 3.0]),
                    (Squeeze, linspace(0.0, 1.5, 61)),
                ],
                Efficiency,
                vec![Squeeze],
            ),
            Figure::Fig4 => (
                "two-level efficiency against Tc/Th at r = 0.5",
                CycleParams {
                    squeeze_r: 0.5,
                    ..base(TwoLevel, 5.0, 2.0)
                },
                vec![
                    (OmegaRatio, vec![2.0, 5.0, 10.0]),
                    (InverseTempRatio, linspace(0.1, 0.9, 81)),
                ],
                Efficiency,
                vec![],
            ),
            Figure::Fig5 => (
                "two-level efficiency over omega2/omega1 and r at Th = 2Tc",
                base(TwoLevel, 5.0, 2.0),
                vec![
                    (OmegaRatio, linspace(4.0, 10.0, 25)),
                    (Squeeze, linspace(0.0, 1.5, 31)),
                ],
                Efficiency,
                vec![OmegaRatio, Squeeze],
            ),
            Figure::Fig6 => (
                "oscillator W/Tc against omega2/omega1",
                base(Oscillator, 5.0, 2.0),
                vec![
                    (TempRatio, vec![1.5, 2.0]),
                    (OmegaRatio, linspace(1.0, 10.0, 37)),
                    r(),
                ],
                WorkOverTc,
                vec![Squeeze],
            ),
            Figure::Fig7 => (
                "oscillator W/Tc against Th/Tc",
                base(Oscillator, 5.0, 2.0),
                vec![
                    (OmegaRatio, vec![2.0, 5.0]),
                    (TempRatio, linspace(1.05, 5.0, 80)),
                    r(),
                ],
                WorkOverTc,
                vec![Squeeze],
            ),
            Figure::Fig8 => (
                "oscillator efficiency against r at Th = 2Tc",
                base(Oscillator, 5.0, 2.0),
                vec![
                    (OmegaRatio, vec![10.0, 15.0, 20.0]),
                    (Squeeze, linspace(0.0, 1.0, 41)),
                ],
                Efficiency,
                vec![Squeeze],
            ),
            Figure::Fig9 => (
                "oscillator efficiency over omega2/omega1 and r at Th = 2Tc",
                base(Oscillator, 5.0, 2.0),
                vec![
                    (OmegaRatio, linspace(10.0, 20.0, 21)),
                    (Squeeze, linspace(0.0, 1.0, 21)),
                ],
                Efficiency,
                vec![OmegaRatio, Squeeze],
            ),
        };
        FigurePreset {
            name: self.as_str(),
            description,
            base,
            axes,
            quantity,
            increasing_in,
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or(Error::InvalidConfig("preset must be one of fig1..fig9"))
    }
}

/// One grid point: its key values and the cycle parameters they produce.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePoint {
    pub keys: Vec<f64>,
    pub params: CycleParams,
}

impl FigurePreset {
    /// Cartesian product of the axes, first axis slowest.
    pub fn points(&self) -> Vec<FigurePoint> {
        let mut out = vec![FigurePoint {
            keys: Vec::new(),
            params: self.base,
        }];
        for (key, values) in &self.axes {
            out = out
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut keys = p.keys.clone();
                        keys.push(v);
                        FigurePoint {
                            keys,
                            params: key.apply(p.params, v),
                        }
                    })
                })
                .collect();
        }
        out
    }

    pub fn columns(&self) -> Vec<&'static str> {
        let mut c: Vec<&'static str> = self.axes.iter().map(|(k, _)| k.label()).collect();
        match self.quantity {
            Quantity::WorkOverTc => c.push("W_over_Tc"),
            Quantity::Efficiency => c.extend(["eta", "eta_carnot", "eta_curzon_ahlborn"]),
        }
        c
    }

    /// Table row for an evaluated point. The efficiency is empty outside
    /// the engine regime.
    pub fn row(&self, point: &FigurePoint, evaluated: &SweepRow) -> Vec<Option<f64>> {
        let mut row: Vec<Option<f64>> = point.keys.iter().copied().map(Some).collect();
        let p = &evaluated.performance;
        match self.quantity {
            Quantity::WorkOverTc => row.push(Some(evaluated.work_over_tc())),
            Quantity::Efficiency => {
                row.extend([p.eta, Some(p.eta_carnot), Some(p.eta_curzon_ahlborn)])
            }
        }
        row
    }

    /// Evaluates every point in order.
    pub fn table(&self) -> Result<Table> {
        let rows = self
            .points()
            .iter()
            .map(|pt| SweepRow::evaluate(pt.params).map(|e| self.row(pt, &e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Table {
            columns: self.columns(),
            keys: self.axes.len(),
            rows,
        })
    }
}

/// A figure table: leading key columns, then value columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    /// Number of leading key columns.
    pub keys: usize,
    pub rows: Vec<Vec<Option<f64>>>,
}

/// Worst first difference found along one key.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monotonicity {
    pub key_column: usize,
    pub min_difference: f64,
    pub comparisons: usize,
}

impl Monotonicity {
    pub fn holds(&self, tolerance: f64) -> bool {
        self.min_difference >= -tolerance
    }
}

type Group = (Vec<u64>, Vec<(f64, f64)>);

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|&c| c == name)
    }

    /// Differences of `value_column` between neighbouring rows that share
    /// every key except `key_column`. Rows with an empty value are skipped.
    pub fn monotonicity(&self, key_column: usize, value_column: usize) -> Monotonicity {
        let mut groups: Vec<Group> = Vec::new();
        for row in &self.rows {
            let (Some(k), Some(v)) = (row[key_column], row[value_column]) else {
                continue;
            };
            let others: Vec<u64> = (0..self.keys)
                .filter(|&i| i != key_column)
                .map(|i| row[i].map_or(u64::MAX, f64::to_bits))
                .collect();
            match groups.iter_mut().find(|(g, _)| *g == others) {
                Some((_, pts)) => pts.push((k, v)),
                None => groups.push((others, vec![(k, v)])),
            }
        }
        let mut min_difference = f64::INFINITY;
        let mut comparisons = 0;
        for (_, pts) in &mut groups {
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            for w in pts.windows(2) {
                min_difference = min_difference.min(w[1].1 - w[0].1);
                comparisons += 1;
            }
        }
        Monotonicity {
            key_column,
            min_difference,
            comparisons,
        }
    }
}

/// Checks every key the preset expects its quantity to increase along.
pub fn check_preset(preset: &FigurePreset, table: &Table) -> Vec<(Key, Monotonicity)> {
    let value = match preset.quantity {
        Quantity::WorkOverTc => table.column("W_over_Tc"),
        Quantity::Efficiency => table.column("eta"),
    }
    .unwrap_or(table.keys);
    preset
        .increasing_in
        .iter()
        .filter_map(|&k| {
            let col = preset.axes.iter().position(|(a, _)| *a == k)?;
            Some((k, table.monotonicity(col, value)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints() {
        let v = linspace(1.0, 10.0, 37);
        assert_eq!((v[0], v[36], v.len()), (1.0, 10.0, 37));
        assert!((v[4] - 2.0).abs() < 1e-15);
        assert_eq!(linspace(3.0, 4.0, 1), vec![3.0]);
    }

    #[test]
    fn fig1_columns_and_grid() {
        let p = Figure::Fig1.preset();
        assert_eq!(p.columns(), vec!["omega2/omega1", "r", "W_over_Tc"]);
        let pts = p.points();
        assert_eq!(pts.len(), 37 * 5);
        assert_eq!(pts[1].keys, vec![1.0, 0.25]);
        assert_eq!(pts[5].params.omega2, 1.25);
        assert_eq!(pts[5].params.t_hot, 2.0);
    }

    #[test]
    fn fig5_is_a_surface_at_double_cold_temperature() {
        let p = Figure::Fig5.preset();
        assert_eq!(p.axes[0].0, Key::OmegaRatio);
        assert_eq!(p.axes[1].0, Key::Squeeze);
        assert!(p.points().iter().all(|pt| pt.params.t_hot == 2.0));
    }

    #[test]
    fn inverse_temperature_axis() {
        let p = Figure::Fig4.preset();
        let pts = p.points();
        assert!((pts[0].params.t_hot - 10.0).abs() < 1e-12);
        assert_eq!(pts[0].params.squeeze_r, 0.5);
    }

    #[test]
    fn monotonicity_groups_by_other_keys() {
        let t = Table {
            columns: vec!["a", "b", "v"],
            keys: 2,
            rows: vec![
                vec![Some(0.0), Some(0.0), Some(1.0)],
                vec![Some(0.0), Some(1.0), Some(2.0)],
                vec![Some(1.0), Some(0.0), Some(0.0)],
                vec![Some(1.0), Some(1.0), Some(0.5)],
            ],
        };
        let along_b = t.monotonicity(1, 2);
        assert_eq!(along_b.comparisons, 2);
        assert_eq!(along_b.min_difference, 0.5);
        let along_a = t.monotonicity(0, 2);
        assert_eq!(along_a.min_difference, -1.5);
        assert!(!along_a.holds(1e-12));
    }

    #[test]
    fn names_round_trip() {
        for f in Figure::ALL {
            assert_eq!(f.as_str().parse::<Figure>().unwrap(), f);
        }
        assert!("fig10".parse::<Figure>().is_err());
    }
}
