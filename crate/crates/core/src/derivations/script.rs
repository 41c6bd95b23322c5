use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::algebra::parse::parse_element;
use crate::algebra::{AlgebraElement, Context};
use crate::coeff::Rational;
use crate::error::{Error, Result};
use crate::ideal::{EchelonBasis, EchelonOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operation {
    /// `uv - (-1)^{|u||v|} vu` on homogeneous operands.
    GradedCommutator,
    Commutator,
    Anticommutator,
    /// Product of all operands, left to right.
    Multiply,
    /// The single operand times `factor`.
    Scale,
    /// The single operand as written.
    Eval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    /// Later operands refer to this result as `$name`.
    pub name: String,
    pub op: Operation,
    pub operands: Vec<String>,
    /// Multiplies the result; `scale` requires it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<Rational>,
    pub expected: String,
    /// Value recorded in the source derivation when it differs from `expected`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stated: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// The result is claimed to lie in `B_j Ā` for the script's `ideal_j`.
    #[serde(default)]
    pub in_ideal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationScript {
    pub name: String,
    pub family: String,
    pub n: usize,
    pub phi: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal_j: Option<usize>,
    /// Starting elements claimed to lie in `B_j Ā`.
    #[serde(default)]
    pub members: Vec<String>,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub name: String,
    pub value: String,
    pub expected: String,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stated: Option<String>,
    /// `Some(false)` marks a pinned step.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stated_matches: Option<bool>,
    /// `None` when membership was not checked.
    pub in_ideal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberReport {
    pub element: String,
    pub in_ideal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptReport {
    pub name: String,
    pub family: String,
    pub context: Context,
    pub steps: Vec<StepReport>,
    pub members: Vec<MemberReport>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    /// Why membership checks were skipped, if they were.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership_skipped: Option<String>,
}

impl ScriptReport {
    pub fn pinned_steps(&self) -> impl Iterator<Item = &StepReport> {
        self.steps.iter().filter(|s| s.stated_matches == Some(false))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReplayOptions {
    pub check_membership: bool,
    pub echelon: EchelonOptions,
}

impl Default for ReplayOptions {
    fn default() -> Self {
        ReplayOptions { check_membership: true, echelon: EchelonOptions::default() }
    }
}

fn derr(step: &str, e: impl ToString) -> Error {
    Error::Derivation { step: step.to_string(), message: e.to_string() }
}

fn evaluate(step: &Step, ctx: Context, bound: &BTreeMap<String, AlgebraElement>) -> Result<AlgebraElement> {
    let resolve = |name: &str| bound.get(name).cloned();
    let operands = step
        .operands
        .iter()
        .map(|src| parse_element(ctx, src, &resolve).map_err(|e| derr(&step.name, e)))
        .collect::<Result<Vec<_>>>()?;
    let arity = |k: usize| -> Result<()> {
        if operands.len() == k {
            Ok(())
        } else {
            Err(derr(&step.name, format!("{:?} takes {k} operands, got {}", step.op, operands.len())))
        }
    };
    let value = match step.op {
        Operation::GradedCommutator => {
            arity(2)?;
            operands[0].graded_commutator(&operands[1])
        }
        Operation::Commutator => {
            arity(2)?;
            operands[0].commutator(&operands[1])
        }
        Operation::Anticommutator => {
            arity(2)?;
            operands[0].anticommutator(&operands[1])
        }
        Operation::Multiply => {
            let mut acc = AlgebraElement::one(ctx);
            for o in &operands {
                acc = acc.mul(o)?;
            }
            Ok(acc)
        }
        Operation::Scale => {
            arity(1)?;
            if step.factor.is_none() {
                return Err(derr(&step.name, "scale needs a factor"));
            }
            Ok(operands[0].clone())
        }
        Operation::Eval => {
            arity(1)?;
            Ok(operands[0].clone())
        }
    }
    .map_err(|e| derr(&step.name, e))?;
    Ok(match &step.factor {
        Some(f) => value.scale(f),
        None => value,
    })
}

fn membership_basis(
    script: &DerivationScript,
    ctx: Context,
    elements: &[&AlgebraElement],
    opts: &ReplayOptions,
) -> core::result::Result<Option<EchelonBasis>, String> {
    let Some(j) = script.ideal_j else { return Ok(None) };
    if !opts.check_membership {
        return Err("membership checks disabled".to_string());
    }
    let d = elements.iter().filter_map(|e| e.terms().map(|(m, _)| m.degree()).max()).max().unwrap_or(0);
    EchelonBasis::build(ctx, j, d, opts.echelon).map(Some).map_err(|e| e.to_string())
}

/// Replays `script`, stopping at the first step whose value differs from its
/// expected value.
pub fn replay(script: &DerivationScript, opts: &ReplayOptions) -> Result<ScriptReport> {
    let ctx = Context::new(script.n, script.phi.iter().copied())?;
    let mut bound: BTreeMap<String, AlgebraElement> = BTreeMap::new();
    let mut values = Vec::new();
    let mut failure = None;
    for step in &script.steps {
        let value = evaluate(step, ctx, &bound)?;
        let expected = AlgebraElement::parse(ctx, &step.expected).map_err(|e| derr(&step.name, e))?;
        let stated = match &step.stated {
            Some(s) => Some(AlgebraElement::parse(ctx, s).map_err(|e| derr(&step.name, e))?),
            None => None,
        };
        let matches = value == expected;
        values.push((step, value.clone(), stated));
        if !matches {
            failure = Some(format!("step `{}`: got {value}, expected {expected}", step.name));
            break;
        }
        bound.insert(step.name.clone(), value);
    }
    let members = script
        .members
        .iter()
        .map(|src| AlgebraElement::parse(ctx, src).map_err(|e| derr("members", e)))
        .collect::<Result<Vec<_>>>()?;
    let mut check: Vec<&AlgebraElement> = members.iter().collect();
    check.extend(values.iter().filter(|(s, _, _)| s.in_ideal).map(|(_, v, _)| v));
    let (basis, membership_skipped) = match membership_basis(script, ctx, &check, opts) {
        Ok(b) => (b, None),
        Err(reason) => (None, Some(reason)),
    };
    let in_ideal = |a: &AlgebraElement| -> Result<Option<bool>> {
        match &basis {
            Some(b) => b.contains(a).map(Some),
            None => Ok(None),
        }
    };
    let mut step_reports = Vec::new();
    let mut passed = failure.is_none();
    for (step, value, stated) in &values {
        let membership = if step.in_ideal { in_ideal(value)? } else { None };
        if membership == Some(false) {
            passed = false;
            failure.get_or_insert_with(|| format!("step `{}`: {value} is not in the ideal", step.name));
        }
        step_reports.push(StepReport {
            name: step.name.clone(),
            value: value.to_string(),
            expected: step.expected.clone(),
            matches: AlgebraElement::parse(ctx, &step.expected).map(|e| &e == value).unwrap_or(false),
            stated: step.stated.clone(),
            stated_matches: stated.as_ref().map(|s| s == value),
            in_ideal: membership,
        });
    }
    let mut member_reports = Vec::new();
    for (src, m) in script.members.iter().zip(&members) {
        let membership = in_ideal(m)?;
        if membership == Some(false) {
            passed = false;
            failure.get_or_insert_with(|| format!("member {src} is not in the ideal"));
        }
        member_reports.push(MemberReport { element: src.clone(), in_ideal: membership });
    }
    Ok(ScriptReport {
        name: script.name.clone(),
        family: script.family.clone(),
        context: ctx,
        steps: step_reports,
        members: member_reports,
        passed,
        failure,
        membership_skipped,
    })
}
