//! JSON scenario files: a labeled space, named partitions, an optional
//! filtration given as a list of partition names, named variables and named
//! densities.

use std::collections::BTreeMap;
use std::path::Path;

use condind::{ExtReal, Filtration, Partition, ProbabilitySpace, RandomVariable};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAtom {
    label: String,
    prob: ExtReal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    atoms: Vec<RawAtom>,
    #[serde(default)]
    partitions: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    filtration: Option<Vec<String>>,
    #[serde(default)]
    variables: BTreeMap<String, BTreeMap<String, ExtReal>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    densities: BTreeMap<String, BTreeMap<String, ExtReal>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub space: ProbabilitySpace,
    pub partitions: BTreeMap<String, Partition>,
    pub filtration: Option<Filtration>,
    pub variables: BTreeMap<String, RandomVariable>,
    pub densities: BTreeMap<String, RandomVariable>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ScenarioError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let raw: RawScenario = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::validate(raw)
    }

    fn validate(raw: RawScenario) -> Result<Self, ScenarioError> {
        let invalid = |m: String| ScenarioError::Validation(m);
        let labels: Vec<String> = raw.atoms.iter().map(|a| a.label.clone()).collect();
        let mut probs = Vec::with_capacity(raw.atoms.len());
        for a in &raw.atoms {
            match &a.prob {
                ExtReal::Finite(p) => probs.push(p.clone()),
                _ => return Err(invalid(format!("atom `{}` has infinite probability", a.label))),
            }
        }
        let space = ProbabilitySpace::new(labels, probs).map_err(|e| invalid(e.to_string()))?;
        let atom = |label: &str, what: &str| {
            space.index_of(label).ok_or_else(|| invalid(format!("{what} refers to unknown atom `{label}`")))
        };

        let mut partitions = BTreeMap::new();
        for (name, cells) in &raw.partitions {
            let what = format!("partition `{name}`");
            let cells = cells
                .iter()
                .map(|c| c.iter().map(|l| atom(l, &what)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let p = Partition::from_cells(space.len(), cells).map_err(|e| invalid(format!("{what}: {e}")))?;
            partitions.insert(name.clone(), p);
        }

        let filtration = match &raw.filtration {
            None => None,
            Some(names) => {
                let parts = names
                    .iter()
                    .map(|n| {
                        partitions
                            .get(n)
                            .cloned()
                            .ok_or_else(|| invalid(format!("filtration refers to unknown partition `{n}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Some(Filtration::new(names.clone(), parts).map_err(|e| invalid(format!("filtration: {e}")))?)
            }
        };

        let read_vars = |kind: &str, map: &BTreeMap<String, BTreeMap<String, ExtReal>>| {
            let mut out = BTreeMap::new();
            for (name, values) in map {
                let what = format!("{kind} `{name}`");
                let mut v = vec![None; space.len()];
                for (label, value) in values {
                    v[atom(label, &what)?] = Some(value.clone());
                }
                let v: Option<Vec<ExtReal>> = v.into_iter().collect();
                let v = v.ok_or_else(|| invalid(format!("{what} does not assign every atom")))?;
                out.insert(name.clone(), RandomVariable::new(v));
            }
            Ok::<_, ScenarioError>(out)
        };
        let variables = read_vars("variable", &raw.variables)?;
        let densities = read_vars("density", &raw.densities)?;
        if let Some(clash) = densities.keys().find(|k| variables.contains_key(*k)) {
            return Err(invalid(format!("`{clash}` is both a variable and a density")));
        }
        Ok(Scenario { space, partitions, filtration, variables, densities })
    }

    pub fn to_json(&self) -> String {
        let labels = self.space.labels();
        let atoms = labels
            .iter()
            .zip(self.space.probs())
            .map(|(l, p)| RawAtom { label: l.clone(), prob: ExtReal::Finite(p.clone()) })
            .collect();
        let partitions = self
            .partitions
            .iter()
            .map(|(n, p)| {
                let cells = p.cells().iter().map(|c| c.iter().map(|&a| labels[a].clone()).collect()).collect();
                (n.clone(), cells)
            })
            .collect();
        let by_label = |map: &BTreeMap<String, RandomVariable>| {
            map.iter()
                .map(|(n, v)| (n.clone(), labels.iter().cloned().zip(v.values().iter().cloned()).collect()))
                .collect()
        };
        let raw = RawScenario {
            atoms,
            partitions,
            filtration: self.filtration.as_ref().map(|f| f.times().to_vec()),
            variables: by_label(&self.variables),
            densities: by_label(&self.densities),
        };
        serde_json::to_string_pretty(&raw).expect("scenario serializes")
    }

    pub fn partition(&self, name: &str) -> Option<&Partition> {
        self.partitions.get(name)
    }

    pub fn variable(&self, name: &str) -> Option<&RandomVariable> {
        self.variables.get(name).or_else(|| self.densities.get(name))
    }

    /// Renders a variable as `{label: value}`.
    pub fn labeled(&self, x: &RandomVariable) -> BTreeMap<String, String> {
        self.space.labels().iter().cloned().zip(x.values().iter().map(ToString::to_string)).collect()
    }
}
