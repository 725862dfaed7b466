//! Property checks on the reconstructed maps in `fixtures/`.

use std::fmt;
use std::path::Path;

use interp_core::{
    enumerate_maximal_traces, explicability, legibility, GridScenario, HypothesisSet, Observer, ParameterSelector,
    Trace,
};

use crate::{fmt6, load_scenario, CliError, Result};

/// Fixed trace rated in both study-1 maps.
pub const STUDY1_TRACE: &str = "URRRRD";
/// Prefix shown in the multi-goal study-2 map.
pub const STUDY2A_PREFIX: &str = "UU";
/// Prefix shown in the single-goal study-2 map.
pub const STUDY2B_PREFIX: &str = "ULL";
/// Reference values for the two study-2 prefixes.
pub const APPENDIX_TARGETS: [f64; 2] = [0.9922, 0.9961];
pub const APPENDIX_TOLERANCE: f64 = 0.002;
/// Figure-1 prefixes: heading straight down, and stepping left first.
pub const FIG1_DIRECT: &str = "DDDDD";
pub const FIG1_DETOUR: &str = "LLDDD";
/// Study-3 prefixes: the long right-hand detour and the explicable route.
pub const STUDY3_DETOUR: &str = "RRRUU";
pub const STUDY3_EXPLICABLE: &str = "RUU";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    P1,
    P2,
    P3,
    Appendix,
}

impl Property {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "p1" => Some(Property::P1),
            "p2" => Some(Property::P2),
            "p3" => Some(Property::P3),
            "appendix" => Some(Property::Appendix),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::P1 => "p1",
            Property::P2 => "p2",
            Property::P3 => "p3",
            Property::Appendix => "appendix",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub property: Property,
    /// `name value` pairs in the order they were computed.
    pub values: Vec<(String, f64)>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl Report {
    pub fn value(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, v) in &self.values {
            writeln!(f, "{name} {}", fmt6(*v))?;
        }
        for n in &self.notes {
            writeln!(f, "{n}")?;
        }
        writeln!(f, "{} {}", self.property.name(), if self.pass { "PASS" } else { "FAIL" })
    }
}

fn fixture(dir: &Path, name: &str) -> Result<(GridScenario, HypothesisSet)> {
    let path = dir.join(name);
    if !path.is_file() {
        return Err(CliError::Fixture(path));
    }
    load_scenario(&path)
}

fn trace(s: &GridScenario, path: &str) -> Result<Trace> {
    let t = Trace::parse(s.start(), path)?;
    s.check_trace(&t)?;
    Ok(t)
}

/// The same models with explicit priors rescaled to leave `m0` for M0.
/// A zero `m0` gives the legacy observer.
pub fn with_m0(s: &GridScenario, hs: &HypothesisSet, m0: f64) -> Result<HypothesisSet> {
    let total: f64 = hs.priors().iter().sum();
    let mut priors: Vec<f64> = hs.priors().iter().map(|p| p / total * (1.0 - m0)).collect();
    let fix = 1.0 - m0 - priors.iter().sum::<f64>();
    priors[0] += fix;
    let models = hs.models().to_vec();
    Ok(if m0 == 0.0 {
        HypothesisSet::legacy(s, models, priors, 0.0)?
    } else {
        HypothesisSet::new(s, models, priors, m0)?
    })
}

pub fn cmd_reproduce(property: Property, fixtures: &Path) -> Result<Report> {
    match property {
        Property::P1 => p1(fixtures),
        Property::P2 => p2(fixtures),
        Property::P3 => p3(fixtures),
        Property::Appendix => appendix(fixtures),
    }
}

fn p1(dir: &Path) -> Result<Report> {
    let (sa, ha) = fixture(dir, "study1a.scn")?;
    let (sb, hb) = fixture(dir, "study1b.scn")?;
    let ea = explicability(&sa, &ha, &trace(&sa, STUDY1_TRACE)?)?;
    let eb = explicability(&sb, &hb, &trace(&sb, STUDY1_TRACE)?)?;
    Ok(Report {
        property: Property::P1,
        values: vec![("study1a_explicability".into(), ea), ("study1b_explicability".into(), eb)],
        notes: vec![format!("trace {STUDY1_TRACE}")],
        pass: ea > eb,
    })
}

/// Moves all explicit prior mass onto the first model, scaled so that its
/// prior times likelihood equals the summed explicit evidence.
fn single_support(s: &GridScenario, hs: &HypothesisSet, prefix: &Trace) -> Result<HypothesisSet> {
    let obs = Observer::new(s, hs)?;
    let lik = obs.observe(prefix)?.prefix_likelihoods().to_vec();
    let k = hs.models().len();
    let mass: f64 = (0..k).map(|i| hs.priors()[i] * lik[i]).fold(0.0, |a, b| a + b);
    let mut priors = vec![0.0; k];
    priors[0] = mass / lik[0];
    let m0 = 1.0 - priors[0];
    if !(0.0..=1.0).contains(&priors[0]) || (m0 - hs.m0_prior()).abs() > 1e-12 {
        return Err(CliError::Usage("single-support prior is not a probability on this fixture".into()));
    }
    Ok(HypothesisSet::new(s, hs.models().to_vec(), priors, hs.m0_prior())?)
}

fn p2(dir: &Path) -> Result<Report> {
    let (sa, ha) = fixture(dir, "study2a.scn")?;
    let (sb, hb) = fixture(dir, "study2b.scn")?;
    let pa = trace(&sa, STUDY2A_PREFIX)?;
    let pb = trace(&sb, STUDY2B_PREFIX)?;
    let shared = explicability(&sa, &ha, &pa)?;
    let single = explicability(&sa, &single_support(&sa, &ha, &pa)?, &pa)?;
    let b = explicability(&sb, &hb, &pb)?;
    Ok(Report {
        property: Property::P2,
        values: vec![
            ("study2a_shared_support".into(), shared),
            ("study2a_single_support".into(), single),
            ("study2b_single_support".into(), b),
        ],
        notes: vec![format!("difference {:e}", (shared - single).abs())],
        pass: (shared - single).abs() <= 1e-9,
    })
}

/// Largest `L - E` over every prefix of every maximal trace and every goal.
fn worst_bound_gap(s: &GridScenario, hs: &HypothesisSet) -> Result<(f64, usize)> {
    let obs = Observer::new(s, hs)?;
    let selectors: Vec<ParameterSelector> = hs.models().iter().map(|m| ParameterSelector::goal(m.goal())).collect();
    let mut worst = f64::NEG_INFINITY;
    let mut checked = 0;
    for t in enumerate_maximal_traces(s)?.traces() {
        let mut st = obs.initial()?;
        for k in 0..=t.len() {
            if k > 0 {
                st = st.update(t.actions[k - 1])?;
            }
            let e = interp_core::scores::explicability_of(&st);
            for sel in &selectors {
                worst = worst.max(interp_core::scores::legibility_of(&st, sel) - e);
                checked += 1;
            }
        }
    }
    Ok((worst, checked))
}

fn p3(dir: &Path) -> Result<Report> {
    let mut values = Vec::new();
    let mut notes = Vec::new();
    let mut pass = true;

    let (s3a, h3a) = fixture(dir, "study3a.scn")?;
    let (s3b, h3b) = fixture(dir, "study3b.scn")?;
    for (name, s, hs) in [("study3a", &s3a, &h3a), ("study3b", &s3b, &h3b)] {
        let (gap, n) = worst_bound_gap(s, hs)?;
        notes.push(format!("{name}: {n} prefix/goal pairs checked, max legibility - explicability {gap:e}"));
        pass &= gap <= 1e-12;
    }
    let coffee = ParameterSelector::goal('C');
    let detour = trace(&s3a, STUDY3_DETOUR)?;
    let direct = trace(&s3b, STUDY3_EXPLICABLE)?;
    let la = legibility(&s3a, &h3a, &detour, &coffee)?;
    let lb = legibility(&s3b, &h3b, &direct, &coffee)?;
    let legacy_a = legibility(&s3a, &with_m0(&s3a, &h3a, 0.0)?, &detour, &coffee)?;
    let legacy_b = legibility(&s3b, &with_m0(&s3b, &h3b, 0.0)?, &direct, &coffee)?;
    values.push(("study3a_legibility_C".into(), la));
    values.push(("study3b_legibility_C".into(), lb));
    values.push(("study3a_legacy_legibility_C".into(), legacy_a));
    values.push(("study3b_legacy_legibility_C".into(), legacy_b));
    pass &= lb > la;

    let (f, hf) = fixture(dir, "fig1.scn")?;
    let direct = trace(&f, FIG1_DIRECT)?;
    let detour = trace(&f, FIG1_DETOUR)?;
    let sel = ParameterSelector::goal('C');
    for m0 in [0.1, 0.2, 0.3] {
        let hs = with_m0(&f, &hf, m0)?;
        let (ed, ld) = (explicability(&f, &hs, &direct)?, legibility(&f, &hs, &direct, &sel)?);
        let (et, lt) = (explicability(&f, &hs, &detour)?, legibility(&f, &hs, &detour, &sel)?);
        values.push((format!("fig1_m0_{m0}_direct_explicability"), ed));
        values.push((format!("fig1_m0_{m0}_detour_explicability"), et));
        values.push((format!("fig1_m0_{m0}_direct_legibility_C"), ld));
        values.push((format!("fig1_m0_{m0}_detour_legibility_C"), lt));
        pass &= et < ed && lt < ld;
    }
    Ok(Report { property: Property::P3, values, notes, pass })
}

fn appendix(dir: &Path) -> Result<Report> {
    let (sa, ha) = fixture(dir, "study2a.scn")?;
    let (sb, hb) = fixture(dir, "study2b.scn")?;
    let a = explicability(&sa, &ha, &trace(&sa, STUDY2A_PREFIX)?)?;
    let b = explicability(&sb, &hb, &trace(&sb, STUDY2B_PREFIX)?)?;
    let pass =
        (a - APPENDIX_TARGETS[0]).abs() <= APPENDIX_TOLERANCE && (b - APPENDIX_TARGETS[1]).abs() <= APPENDIX_TOLERANCE;
    Ok(Report {
        property: Property::Appendix,
        values: vec![("study2a_explicability".into(), a), ("study2b_explicability".into(), b)],
        notes: vec![format!("targets {} and {} within {APPENDIX_TOLERANCE}", APPENDIX_TARGETS[0], APPENDIX_TARGETS[1])],
        pass,
    })
}
