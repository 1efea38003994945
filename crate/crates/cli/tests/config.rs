use sagnac_cli::config::{
    Control, ConfigError, Loading, Mode, RawConfig, RunConfig, SegmentLength, SweepBound,
    SweepVariable, EARTH_RATE,
};
use sagnac_cli::presets::{self, Preset};
use sagnac_core::absorption::AbsorptionModel;
use sagnac_core::constants::AMU;

fn err(text: &str) -> String {
    RunConfig::parse(text).unwrap_err().to_string()
}

#[test]
fn empty_document_gives_defaults() {
    let c = RunConfig::parse("").unwrap();
    assert_eq!(c.species.mass(), 23.0 * AMU);
    assert_eq!(c.species.dipole_moment(), 2.1e-29);
    assert_eq!(c.species.cross_section(), 0.0);
    assert_eq!(c.probe.wavelength(), 5e-7);
    assert_eq!(c.probe.beam_area(), 1e-6);
    assert_eq!(c.radius, 0.1);
    assert_eq!(c.omega, EARTH_RATE);
    assert!(c.segments.is_empty());
    assert!(c.sweep.is_none());
    assert_eq!(c.mode, Mode::Analytic);
    assert_eq!(c.absorption, AbsorptionModel::General);
    assert_eq!(c.quadrature_order, 64);
    assert_eq!(c.tolerance, 1e-9);
    assert_eq!(c.epsilon, 1e-2);
    assert_eq!(c.kappa_budget, 1.0);
}

#[test]
fn units_convert_once() {
    let c = RunConfig::parse(
        r#"
wavelength = "500 nm"
beam_area = "1 mm^2"
cross_section = "1e-10 cm^2"
radius = "10 cm"
omega = "15 deg/h"

[[segment]]
length = "100 um"
density = "1e11 cm^-3"
gamma = "6.1e7 rad/s"
eta = 1
control_rabi = "1e7 rad/s"
temperature_ratio = "1000 T_rec"
"#,
    )
    .unwrap();
    assert_eq!(c.probe.wavelength(), 5e-7);
    assert_eq!(c.probe.beam_area(), 1e-6);
    assert_eq!(c.species.cross_section(), 1e-14);
    assert_eq!(c.radius, 0.1);
    assert!((c.omega / 7.27220521664e-5 - 1.0).abs() < 1e-10);
    let s = c.segments[0];
    assert_eq!(s.length, SegmentLength::Fixed(1e-4));
    assert_eq!(s.loading, Loading::Density(1e17));
    assert_eq!(s.control, Control::Rabi(1e7));
    assert_eq!(s.temperature_ratio, 1000.0);
}

#[test]
fn negative_eta_rejected() {
    let e = err("[[segment]]\nlength = \"1 cm\"\nopacity = 10\nxi = 1\neta = -0.5\n");
    assert!(e.contains("segment[0].eta"), "{e}");
    assert!(e.contains("eta >= 0"), "{e}");
}

#[test]
fn unknown_keys_rejected() {
    let e = err("wavelenght = \"500 nm\"\n");
    assert!(e.contains("wavelenght"), "{e}");
    let e = err("[[segment]]\nlength = \"1 cm\"\nopacity = 10\nxi = 1\ncolour = 3\n");
    assert!(e.contains("colour"), "{e}");
}

#[test]
fn unit_mismatch_names_expected_unit() {
    let e = err("wavelength = \"500 cm^-3\"\n");
    assert!(e.contains("wavelength") && e.contains("length in m"), "{e}");
    let e = err("radius = \"0.1\"\n");
    assert!(e.contains("radius") && e.contains("length"), "{e}");
    let e = err("[[segment]]\nlength = \"1 cm\"\ndensity = \"1e11 cm^3\"\nxi = 1\n");
    assert!(e.contains("segment[0].density") && e.contains("m^-3"), "{e}");
}

#[test]
fn schema_constraints() {
    assert!(err("sweep_variable = \"xi\"\nsweep_min = 1\nsweep_max = 10\nsweep_count = 1\n[[segment]]\nlength = \"fill\"\nopacity = 1\nxi = 1\n")
        .contains("sweep_count"));
    assert!(err("sweep_variable = \"xi\"\nsweep_min = 0\nsweep_max = 10\nsweep_count = 5\n[[segment]]\nlength = \"fill\"\nopacity = 1\nxi = 1\n")
        .contains("sweep_min"));
    assert!(err("sweep_variable = \"xi\"\nsweep_min = 1\nsweep_max = 10\nsweep_count = 5\n")
        .contains("at least one"));
    assert!(err("sweep_min = 1\n").contains("sweep_variable"));
    assert!(err("[[segment]]\nlength = \"1 cm\"\nopacity = 1\ndensity = \"1 m^-3\"\nxi = 1\n")
        .contains("exactly one of density or opacity"));
    assert!(err("[[segment]]\nlength = \"1 cm\"\nopacity = 1\n").contains("exactly one of xi or control_rabi"));
    assert!(err("[[segment]]\nlength = \"fill\"\nopacity = 1\nxi = 1\n[[segment]]\nlength = \"fill\"\nopacity = 1\nxi = 1\n")
        .contains("at most one"));
    assert!(err("[[segment]]\nlength = \"1 m\"\nopacity = 1\nxi = 1\n").contains("periphery"));
    assert!(err("mode = \"fast\"\n").contains("mode"));
    assert!(err("tolerance = 2.0\n").contains("tolerance"));
    assert!(err("quadrature_order = 0\n").contains("quadrature_order"));
}

#[test]
fn overlay_prefers_top_layer() {
    let base = Preset::Fig3Left.raw().unwrap();
    let top = RawConfig::from_toml("sweep_count = 5\nwavelength = \"600 nm\"\n").unwrap();
    let c = RunConfig::from_raw(&base.overlay(top)).unwrap();
    let sweep = c.sweep.unwrap();
    assert_eq!(sweep.count, 5);
    assert_eq!(sweep.temperatures, vec![1.0, 1e3, 1e6]);
    assert_eq!(c.probe.wavelength(), 6e-7);
    assert_eq!(c.segments[0].length, SegmentLength::Fixed(1e-4));
}

#[test]
fn presets_parse() {
    for p in presets::ALL {
        let c = RunConfig::from_raw(&p.raw().unwrap()).unwrap();
        assert_eq!(c.segments.len(), 1, "{}", p.name());
        assert_eq!(c.sweep.as_ref().unwrap().variable, SweepVariable::Xi);
    }
    let fig2 = RunConfig::from_raw(&Preset::Fig2.raw().unwrap()).unwrap();
    assert_eq!(fig2.sweep.as_ref().unwrap().max, SweepBound::TimesS(10.0));
    assert_eq!(fig2.points().len(), 200);
    let left = RunConfig::from_raw(&Preset::Fig3Left.raw().unwrap()).unwrap();
    assert_eq!(left.points().len(), 3 * 201);
}

#[test]
fn echo_round_trip() {
    let mut docs: Vec<String> = presets::ALL.iter().map(|p| p.document().to_string()).collect();
    docs.push(String::new());
    docs.push(
        r#"
mass = "87 amu"
dipole_moment = "2.5 e a0"
omega = "1e-3 rad/s"
mode = "both"
output = "out.csv"
sweep_variable = "eta"
sweep_scale = "linear"
sweep_min = 0
sweep_max = 2
sweep_count = 7

[[segment]]
length = "3 mm"
density = "2.5e10 cm^-3"
control_rabi = "3.3e6 rad/s"
temperature_ratio = 12.5

[[segment]]
length = "fill"
opacity = 3
xi = 0.7
"#
        .into(),
    );
    for doc in docs {
        let c = RunConfig::parse(&doc).unwrap();
        let echoed = c.echo();
        let again = RunConfig::parse(&echoed).unwrap();
        assert_eq!(c, again, "{echoed}");
        assert_eq!(echoed, again.echo());
    }
}

#[test]
fn syntax_error_reported() {
    assert!(matches!(RunConfig::parse("radius = "), Err(ConfigError::Syntax(_))));
}
