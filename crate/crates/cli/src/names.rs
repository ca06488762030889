//! Indicator names as used on the command line.
//!
//! ```text
//! esssup | essinf | condexp | condexp-ext | weighted:<density>
//! dual:<name> | mix:<name> | famsup:<n1,n2,..> | faminf:<n1,n2,..>
//! lowext:<name>:<E1,E2,..> | upext:<name>:<E1,E2,..>
//! ```
//!
//! Family members are separated by top-level commas, so a family cannot be
//! nested directly inside another family. The last `:` segment of an
//! extension is its list of scenario variables and may be empty.

use condind::indicators::{
    condexp, condexp_ext, dual, essinf, esssup, family_inf, family_sup, lower_extension_indicator, mix_self_dual,
    upper_extension_indicator, weighted,
};
use condind::{Indicator, Partition, RandomVariable};
use thiserror::Error;

use crate::scenario::Scenario;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NameError {
    #[error("unknown indicator `{0}`")]
    UnknownIndicator(String),
    #[error("unknown variable or density `{0}`")]
    UnknownVariable(String),
    #[error("cannot build `{name}`: {reason}")]
    Invalid { name: String, reason: String },
}

pub fn resolve(name: &str, scenario: &Scenario, h: &Partition) -> Result<Indicator, NameError> {
    let invalid = |reason: String| NameError::Invalid { name: name.to_string(), reason };
    let space = &scenario.space;
    match name {
        "esssup" => return Ok(esssup(h)),
        "essinf" => return Ok(essinf(h)),
        "condexp" => return Ok(condexp(space, h)),
        "condexp-ext" => return Ok(condexp_ext(space, h)),
        _ => {}
    }
    let Some((head, rest)) = name.split_once(':') else {
        return Err(NameError::UnknownIndicator(name.to_string()));
    };
    match head {
        "weighted" => {
            let rho = lookup(scenario, rest)?;
            Ok(weighted(space, h, rho).map_err(|e| invalid(e.to_string()))?.renamed(name))
        }
        "dual" => Ok(dual(&resolve(rest, scenario, h)?)),
        "mix" => mix_self_dual(&resolve(rest, scenario, h)?).map_err(|e| invalid(e.to_string())),
        "famsup" | "faminf" => {
            let members = rest.split(',').map(|m| resolve(m.trim(), scenario, h)).collect::<Result<Vec<_>, _>>()?;
            let fam = if head == "famsup" { family_sup(&members) } else { family_inf(&members) };
            Ok(fam.map_err(|e| invalid(e.to_string()))?.renamed(name))
        }
        "lowext" | "upext" => {
            let (inner, evars) =
                rest.rsplit_once(':').ok_or_else(|| invalid("expected <name>:<E-variables>".into()))?;
            let ind = resolve(inner, scenario, h)?;
            let e_list = evars
                .split(',')
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .map(|v| lookup(scenario, v).cloned())
                .collect::<Result<Vec<_>, _>>()?;
            let ext = if head == "lowext" {
                lower_extension_indicator(&ind, &e_list)
            } else {
                upper_extension_indicator(&ind, &e_list)
            };
            Ok(ext.map_err(|e| invalid(e.to_string()))?.renamed(name))
        }
        _ => Err(NameError::UnknownIndicator(name.to_string())),
    }
}

pub fn lookup<'a>(scenario: &'a Scenario, name: &str) -> Result<&'a RandomVariable, NameError> {
    scenario.variable(name).ok_or_else(|| NameError::UnknownVariable(name.to_string()))
}
