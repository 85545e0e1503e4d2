//! JSON interchange format for codes, analyses and merges.

use serde::{Deserialize, Serialize};

use crate::code::{CodeAnalysis, OperatorPair, SubsystemCode};
use crate::distance::DistanceResult;
use crate::error::{Result, SlsError};
use crate::lattice::{boundary_logical, Lattice2D, LogicalKind, Side};
use crate::pauli::PauliOperator;
use crate::surgery::{build_merged_code, MergeResult, MergeSpec};

/// A code on disk. `coordinates` are 1-based `(row, col)` per qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub name: String,
    pub n: usize,
    pub gauge_generators: Vec<PauliOperator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    /// ancilla qubit indices, for merged codes
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ancillas: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub merge: Option<MergeInfo>,
}

/// How a merged code was produced, enough to rebuild it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MergeInfo {
    pub code_a: Box<CodeFile>,
    pub code_b: Box<CodeFile>,
    pub side_a: Side,
    pub side_b: Side,
    pub kind: LogicalKind,
    #[serde(default)]
    pub logical_index: usize,
    pub with_ancillas: bool,
    /// `P_L^A` and `P_L^B` as chosen at merge time
    pub logical_a: PauliOperator,
    pub logical_b: PauliOperator,
}

/// Parse a code file. Only structural checks happen here; see
/// [`CodeFile::to_code`] for validation.
pub fn parse_code_file(text: &str) -> Result<CodeFile> {
    serde_json::from_str(text).map_err(|e| SlsError::Format(e.to_string()))
}

impl CodeFile {
    pub fn from_code(code: &SubsystemCode) -> CodeFile {
        CodeFile {
            name: code.name().to_string(),
            n: code.n(),
            gauge_generators: code.gauge_generators().to_vec(),
            coordinates: code.geometry().map(|l| l.coords().to_vec()),
            family: None,
            ancillas: Vec::new(),
            merge: None,
        }
    }

    pub fn from_merge(result: &MergeResult, kind: LogicalKind) -> CodeFile {
        let spec = &result.spec;
        let mut file = CodeFile::from_code(&result.merged);
        file.family = Some("merged".into());
        file.ancillas = spec.ancilla_ids.clone();
        file.merge = Some(MergeInfo {
            code_a: Box::new(CodeFile::from_code(&spec.code_a)),
            code_b: Box::new(CodeFile::from_code(&spec.code_b)),
            side_a: spec.logical_a.side,
            side_b: spec.logical_b.side,
            kind,
            logical_index: spec.logical_a.logical_index,
            with_ancillas: spec.with_ancillas,
            logical_a: spec.logical_a.operator.clone(),
            logical_b: spec.logical_b.operator.clone(),
        });
        file
    }

    /// Validated code with geometry when coordinates are present.
    pub fn to_code(&self) -> Result<SubsystemCode> {
        if self.gauge_generators.iter().any(|g| g.n() != self.n) {
            return Err(SlsError::Format(format!(
                "every gauge generator must act on n = {} qubits",
                self.n
            )));
        }
        let code = SubsystemCode::new(self.name.clone(), self.n, self.gauge_generators.clone())?;
        match &self.coordinates {
            None => Ok(code),
            Some(c) if c.len() != self.n => Err(SlsError::Format(format!(
                "{} coordinates for {} qubits",
                c.len(),
                self.n
            ))),
            Some(c) => code.with_geometry(Lattice2D::fit(c.clone())?),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code files always serialize")
    }
}

/// Rebuild the merge described by `info` from its parent codes.
pub fn rebuild_merge(info: &MergeInfo) -> Result<MergeResult> {
    let a = info.code_a.to_code()?;
    let b = info.code_b.to_code()?;
    let la = boundary_logical(&a, info.side_a, info.logical_index, info.kind)?;
    let lb = boundary_logical(&b, info.side_b, info.logical_index, info.kind)?;
    if la.operator != info.logical_a || lb.operator != info.logical_b {
        return Err(SlsError::IncompatibleMerge(
            "recorded boundary logicals differ from the recomputed ones".into(),
        ));
    }
    build_merged_code(MergeSpec::with_logicals(a, b, la, lb, info.with_ancillas)?)
}

/// Exported analysis: `params` is `[n, k, g, d]` with `d = null` when the
/// search stopped at its weight limit.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisExport {
    pub params: (usize, usize, usize, Option<usize>),
    pub stabilizer: Vec<PauliOperator>,
    pub logical_pairs: Vec<OperatorPair>,
    pub gauge_pairs: Vec<OperatorPair>,
}

impl AnalysisExport {
    pub fn new(a: &CodeAnalysis, d: Option<DistanceResult>) -> AnalysisExport {
        AnalysisExport {
            params: (
                a.params.n,
                a.params.k,
                a.params.g,
                d.and_then(DistanceResult::exact),
            ),
            stabilizer: a.stabilizer_generators.clone(),
            logical_pairs: a.logical_pairs.clone(),
            gauge_pairs: a.gauge_pairs.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{subsystem_surface_code, surface_code};

    #[test]
    fn code_file_round_trip() {
        let c = subsystem_surface_code(3).unwrap();
        let text = CodeFile::from_code(&c).to_json();
        let back = parse_code_file(&text).unwrap().to_code().unwrap();
        assert_eq!(back, c);
        assert_eq!(back.analyze().unwrap().params, c.analyze().unwrap().params);
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(parse_code_file("{").is_err());
        assert!(parse_code_file(r#"{"name":"x","n":1,"gauge_generators":["Q"]}"#).is_err());
        let short = r#"{"name":"x","n":2,"gauge_generators":["Z"]}"#;
        assert!(parse_code_file(short).unwrap().to_code().is_err());
        let coords = r#"{"name":"x","n":2,"gauge_generators":["ZZ"],"coordinates":[[1,1]]}"#;
        assert!(parse_code_file(coords).unwrap().to_code().is_err());
        let far = r#"{"name":"x","n":2,"gauge_generators":["ZZ"],"coordinates":[[1,1],[4000000000,4000000000]]}"#;
        assert!(parse_code_file(far).unwrap().to_code().is_ok());
    }

    #[test]
    fn merge_metadata_rebuilds() {
        let sc = surface_code(3).unwrap();
        let spec = MergeSpec::new(sc.clone(), sc, LogicalKind::Z, true).unwrap();
        let m = build_merged_code(spec).unwrap();
        let file = CodeFile::from_merge(&m, LogicalKind::Z);
        let parsed = parse_code_file(&file.to_json()).unwrap();
        let again = rebuild_merge(parsed.merge.as_ref().unwrap()).unwrap();
        assert_eq!(again.merged, m.merged);
        assert_eq!(parsed.to_code().unwrap(), m.merged);
    }
}
