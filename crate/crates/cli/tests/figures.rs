use sagnac_cli::config::{Point, RawConfig, RunConfig};
use sagnac_cli::design::{design_point, Binding};
use sagnac_cli::presets::Preset;
use sagnac_cli::sweep::{self, OracleOutcome};
use sagnac_core::envelope::Verdict;

fn preset_with(p: Preset, extra: &str) -> RunConfig {
    let raw = p.raw().unwrap().overlay(RawConfig::from_toml(extra).unwrap());
    RunConfig::from_raw(&raw).unwrap()
}

#[test]
fn fig2_endpoints() {
    let c = preset_with(Preset::Fig2, "");
    let s = c.matter_light_ratio();
    let rows = sweep::run(&c, false).unwrap();
    assert_eq!(rows.len(), 200);
    let first = rows[0].report.enhancement.unwrap();
    let last = rows[199].report.enhancement.unwrap();
    assert_eq!(rows[0].xi, 1e-3);
    assert!((rows[199].xi / (10.0 * s) - 1.0).abs() < 1e-12);
    assert!((first / s - 1.0).abs() < 2e-3);
    assert!((last - 1.0).abs() < 0.1);
    assert!(rows.iter().all(|r| r.report.kappa_l_total == 0.0));
}

#[test]
fn fig2_without_momentum_transfer() {
    let c = RunConfig::parse(
        "sweep_variable = \"xi\"\nsweep_min = 1e-3\nsweep_max = \"10 S\"\nsweep_count = 50\n\
         [[segment]]\nlength = \"fill\"\nopacity = 100\neta = 0\nxi = 1\n",
    )
    .unwrap();
    for row in sweep::run(&c, false).unwrap() {
        assert_eq!(row.report.enhancement, Some(1.0));
    }
}

fn crossing(rows: &[sweep::SweepRow]) -> (f64, f64) {
    let w = rows
        .windows(2)
        .find(|w| w[0].report.kappa_l_total > 1.0 && w[1].report.kappa_l_total <= 1.0)
        .unwrap();
    (w[0].xi, w[1].xi)
}

#[test]
fn fig3_knees_bracketed() {
    for (p, knee) in [(Preset::Fig3Left, 125.2), (Preset::Fig3Right, 3.974e4)] {
        let c = preset_with(p, "");
        let rows = sweep::run(&c, false).unwrap();
        let n = rows.len() / 3;
        let (lo, hi) = crossing(&rows[..n]);
        assert!(lo < knee && knee < hi, "{}: {lo} {hi}", p.name());
    }
}

#[test]
fn fig3_linear_in_temperature() {
    for p in [Preset::Fig3Left, Preset::Fig3Right] {
        let c = preset_with(p, "");
        let rows = sweep::run(&c, false).unwrap();
        let n = rows.len() / 3;
        for i in 0..n {
            let base = rows[i].report.kappa_l_total;
            for (k, t) in [(1, 1e3), (2, 1e6)] {
                let r = &rows[k * n + i];
                assert_eq!(r.temperature_ratio, Some(t));
                assert_eq!(r.xi, rows[i].xi);
                assert!((r.report.kappa_l_total / (t * base) - 1.0).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn rows_report_validity() {
    let c = preset_with(Preset::Fig3Left, "");
    let rows = sweep::run(&c, false).unwrap();
    assert!(!rows[0].report.validity.absorption_within_budget);
    assert!(rows[200].report.validity.all_pass());
}

#[test]
fn csv_layout() {
    let c = preset_with(Preset::Fig3Left, "sweep_count = 3\nsweep_temperatures = [1]\n");
    let rows = sweep::run(&c, false).unwrap();
    let mut buf = Vec::new();
    sweep::write_csv(&mut buf, &rows, false, true).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "swept_var,xi,vgr_over_vrec,phase_optical_rad,phase_hybrid_rad,enhancement,kappa_L,valid,temperature_ratio"
    );
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("1.00000000e-2,1.00000000e-2,"));
    assert!(lines[3].ends_with(",true,1.00000000e0"));
}

#[test]
fn design_sigma_zero_absorption_binds() {
    let c = preset_with(Preset::Fig3Left, "");
    let d = design_point(&c, 1.0).unwrap();
    assert_eq!(d.binding, Binding::Absorption);
    assert_eq!(d.vgr_over_vrec_min_collisions, 0.0);
    assert!((d.xi_min - 125.2).abs() < 0.1);
    let s = c.matter_light_ratio();
    let expected = (d.xi_min + s) / (d.xi_min + 1.0);
    assert!((d.enhancement / expected - 1.0).abs() < 1e-14);
    assert!(d.feasible);
}

#[test]
fn design_gas_cell_collisions() {
    let c = RunConfig::parse(
        "cross_section = \"1e-10 cm^2\"\n[[segment]]\nlength = \"1 cm\"\ndensity = \"1e11 cm^-3\"\nxi = 1\ntemperature_ratio = 1\n",
    )
    .unwrap();
    let d = design_point(&c, 1.0).unwrap();
    assert!((d.vgr_over_vrec_min_collisions - 10.0).abs() < 1e-12);
    // this cell is optically thick, so absorption still binds
    assert_eq!(d.binding, Binding::Absorption);
    assert!(d.vgr_over_vrec_min_absorption > 10.0);

    let dense_collisions = RunConfig::parse(
        "cross_section = \"1e-9 cm^2\"\n[[segment]]\nlength = \"1 cm\"\ndensity = \"1e11 cm^-3\"\nxi = 1\ntemperature_ratio = 1\n",
    )
    .unwrap();
    let d = design_point(&dense_collisions, 1.0).unwrap();
    assert!((d.vgr_over_vrec_min_collisions - 100.0).abs() < 1e-10);
    assert_eq!(d.binding, Binding::Collisions);
    assert_eq!(d.xi_optimum, d.vgr_over_vrec_min_collisions - 1.0);
}

#[test]
fn design_infeasible() {
    let c = RunConfig::parse(
        "cross_section = \"1e-4 cm^2\"\n[[segment]]\nlength = \"10 cm\"\ndensity = \"1e15 cm^-3\"\nxi = 1\ntemperature_ratio = 1\n",
    )
    .unwrap();
    let d = design_point(&c, 1.0).unwrap();
    assert!(!d.feasible);
    assert!(d.enhancement.is_nan());
    assert!(d.to_string().contains("infeasible="));
}

#[test]
fn design_requires_one_segment() {
    let c = RunConfig::parse("").unwrap();
    assert!(design_point(&c, 1.0).is_err());
}

fn compared(row: &sweep::SweepRow) -> sagnac_core::envelope::ComparisonReport {
    match row.oracle.as_ref().unwrap() {
        OracleOutcome::Compared(c) => *c,
        OracleOutcome::Error(e) => panic!("{e}"),
    }
}

#[test]
fn oracle_cold_eta_zero() {
    let c = RunConfig::parse("[[segment]]\nlength = \"fill\"\nopacity = 50\neta = 0\nxi = 3\n").unwrap();
    let row = sweep::evaluate(&c, Point::default(), true).unwrap();
    let cmp = compared(&row);
    assert_eq!(cmp.verdict, Verdict::Pass);
    assert!(cmp.phase_deviation < 1e-6);
    assert!(row.oracle_ok());
}

#[test]
fn oracle_vacuum_trivial() {
    let c = RunConfig::parse("").unwrap();
    let row = sweep::evaluate(&c, Point::default(), true).unwrap();
    assert_eq!(compared(&row).verdict, Verdict::Pass);
}

#[test]
fn oracle_out_of_validity_skipped() {
    let c = preset_with(Preset::Fig3Left, "");
    let row = sweep::evaluate(
        &c,
        Point {
            swept: Some(10.0),
            temperature_ratio: Some(1.0),
        },
        true,
    )
    .unwrap();
    assert!(!row.report.validity.all_pass());
    assert_eq!(row.oracle.as_ref().unwrap().verdict(), "skipped");
    assert!(row.oracle_ok());
}
