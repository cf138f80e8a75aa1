//! Exploratory search over the dimensions `dim Ann(x)` or `dim Alt(x)` that
//! occur at one level.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    a5_family, ann_dim_bound, build_element_with_ann_dim, sign_sequences, top_zero_divisor,
};
use crate::document::ElementDocument;
use crate::element::{check_level, Element};
use crate::error::{Error, Result};
use crate::operators::{alternator_space, ann_dim};

use super::report::TOOL_VERSION;
use super::rng::TrialRng;
use super::sampling::Sampler;
use super::suites::a5_alpha_list;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Ann,
    Alt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Random,
    Structured,
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ann" => Ok(Target::Ann),
            "alt" => Ok(Target::Alt),
            _ => Err(Error::input(format!("unknown target {s:?}; expected ann or alt"))),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Strategy::Random),
            "structured" => Ok(Strategy::Structured),
            _ => Err(Error::input(format!(
                "unknown strategy {s:?}; expected random or structured"
            ))),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Ann => "ann",
            Target::Alt => "alt",
        })
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Random => "random",
            Strategy::Structured => "structured",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumSpec {
    pub level: u32,
    pub target: Target,
    pub strategy: Strategy,
    pub budget: u64,
    pub seed: u64,
    pub coefficient_bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub level: u32,
    pub target: Target,
    pub strategy: Strategy,
    pub budget: u64,
    pub seed: u64,
    pub coefficient_bound: i64,
    /// Dimension to number of samples reaching it.
    pub histogram: BTreeMap<usize, u64>,
    /// The first sample reaching each dimension.
    pub exemplars: BTreeMap<usize, ElementDocument>,
    pub tool_version: String,
}

impl SpectrumResult {
    pub fn support(&self) -> Vec<usize> {
        self.histogram.keys().copied().collect()
    }
}

/// Certified elements sampled before the random combinations of the
/// structured strategy: every constructible annihilator dimension, the
/// top-dimensional families, the `A_5` family, and each basis vector.
pub fn structured_prefix(level: u32) -> Vec<Element> {
    let mut out = Vec::new();
    if level >= 4 {
        for d in (0..=ann_dim_bound(level)).step_by(4) {
            out.push(build_element_with_ann_dim(level, d).expect("admissible dimension").0);
        }
        let e = |p| Element::basis(3, p).expect("level 3");
        for signs in sign_sequences((level - 4) as usize) {
            out.push(
                top_zero_divisor(level, &signs, (&e(1), &e(2)))
                    .expect("valid seed")
                    .element,
            );
        }
    }
    if level == 5 {
        for alpha in a5_alpha_list() {
            out.push(a5_family(&alpha).expect("nonzero alpha").element);
        }
    }
    for p in 0..(1usize << level) {
        out.push(Element::basis(level, p).expect("valid level"));
    }
    out
}

fn measure(target: Target, x: &Element) -> usize {
    match target {
        Target::Ann => ann_dim(x),
        Target::Alt => alternator_space(x).dim(),
    }
}

pub fn spectrum_search(spec: &SpectrumSpec) -> Result<SpectrumResult> {
    check_level(spec.level)?;
    if spec.budget < 1 {
        return Err(Error::input("budget must be at least 1"));
    }
    if spec.coefficient_bound < 1 {
        return Err(Error::input("coefficient bound must be at least 1"));
    }
    let sampler = Sampler::new(spec.coefficient_bound);
    let prefix = match spec.strategy {
        Strategy::Structured => structured_prefix(spec.level),
        Strategy::Random => Vec::new(),
    };
    let sample = |k: u64| -> Element {
        if let Some(x) = prefix.get(k as usize) {
            return x.clone();
        }
        let mut rng = TrialRng::new(spec.seed, k);
        match spec.strategy {
            Strategy::Structured => sampler.sparse(&mut rng, spec.level, false),
            Strategy::Random => sampler.nonzero(&mut rng, spec.level),
        }
    };
    let measured: Vec<(usize, Element)> = (0..spec.budget)
        .into_par_iter()
        .map(|k| {
            let x = sample(k);
            (measure(spec.target, &x), x)
        })
        .collect();
    let mut histogram = BTreeMap::new();
    let mut exemplars = BTreeMap::new();
    for (d, x) in measured {
        *histogram.entry(d).or_insert(0) += 1;
        exemplars
            .entry(d)
            .or_insert_with(|| ElementDocument::from_element(&x));
    }
    Ok(SpectrumResult {
        level: spec.level,
        target: spec.target,
        strategy: spec.strategy,
        budget: spec.budget,
        seed: spec.seed,
        coefficient_bound: spec.coefficient_bound,
        histogram,
        exemplars,
        tool_version: TOOL_VERSION.to_string(),
    })
}
