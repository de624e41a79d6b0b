//! Shared JSON input schema: the union of the Lie algebra and
//! hypercomplex-structure ingestion formats plus an optional metric.
//!
//! ```json
//! {
//!   "dim": 4,
//!   "brackets": [{"i": 2, "j": 3, "coeffs": {"4": "1"}}],
//!   "J1": [["0", "-1", "0", "0"], ...],
//!   "J2": [...],
//!   "J3": [...],
//!   "metric": [["1", "0", ...], ...]
//! }
//! ```
//!
//! Rational entries are strings `"p"` or `"p/q"`. An omitted metric means
//! the identity. `catalog dump` emits exactly this schema.

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogCase;
use crate::error::{Error, Result};
use crate::liealg::{AlgebraSpec, LieAlgebra, MetricOnAlgebra};
use crate::matrix::ScalarMatrix;
use crate::quatstruct::{HypercomplexStructure, StructureSpec};

/// One self-contained verification input.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputDoc {
    #[serde(flatten)]
    pub algebra: AlgebraSpec,
    #[serde(flatten)]
    pub structure: StructureSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
}

impl InputDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("cannot parse input document: {e}")))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("schema serializes")
    }

    /// Builds and dimension-checks the three ingredients.
    pub fn build(&self) -> Result<(LieAlgebra, MetricOnAlgebra, HypercomplexStructure)> {
        let algebra = self.algebra.build()?;
        let structure = self.structure.build()?;
        if structure.dimension() != algebra.dimension() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dimension(),
                found: structure.dimension(),
            });
        }
        let metric = match &self.metric {
            None => MetricOnAlgebra::identity(algebra.dimension()),
            Some(rows) => {
                let m = ScalarMatrix::parse_rows(rows)?;
                if m.nrows() != algebra.dimension() {
                    return Err(Error::DimensionMismatch {
                        expected: algebra.dimension(),
                        found: m.nrows(),
                    });
                }
                MetricOnAlgebra::new(m)?
            }
        };
        Ok((algebra, metric, structure))
    }

    /// Serializes a catalog fixture into the schema.
    pub fn from_case(case: &CatalogCase) -> Self {
        let metric = case.data.metric().matrix();
        InputDoc {
            algebra: AlgebraSpec::from_algebra(case.data.algebra()),
            structure: StructureSpec::from_structure(case.data.structure()),
            metric: Some(
                (0..metric.nrows())
                    .map(|i| {
                        (0..metric.ncols())
                            .map(|j| metric.get(i, j).to_string())
                            .collect()
                    })
                    .collect(),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{get_case, CaseId};

    #[test]
    fn dump_and_rebuild_round_trips() {
        for id in CaseId::all() {
            let case = get_case(id);
            let doc = InputDoc::from_case(case);
            let json = doc.to_json_pretty();
            let parsed = InputDoc::from_json(&json).unwrap();
            let (algebra, metric, structure) = parsed.build().unwrap();
            assert_eq!(&algebra, case.data.algebra(), "{id}");
            assert_eq!(&metric, case.data.metric(), "{id}");
            assert_eq!(&structure, case.data.structure(), "{id}");
        }
    }

    #[test]
    fn missing_metric_defaults_to_identity() {
        let case = get_case(CaseId::Case1);
        let mut doc = InputDoc::from_case(case);
        doc.metric = None;
        let (_, metric, _) = doc.build().unwrap();
        assert_eq!(&metric, case.data.metric());
    }

    #[test]
    fn malformed_documents_are_diagnosed() {
        assert!(InputDoc::from_json("{").is_err());
        assert!(InputDoc::from_json("{\"dim\": 4}").is_err());
        // bad rational in a bracket coefficient
        let case = get_case(CaseId::Case1);
        let mut doc = InputDoc::from_case(case);
        doc.algebra.brackets[0]
            .coeffs
            .insert("4".to_string(), "1/0".to_string());
        assert!(doc.build().is_err());
    }
}
