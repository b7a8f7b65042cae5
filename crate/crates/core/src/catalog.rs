//! Cohomology rings of classifying spaces of compact connected Lie groups
//! and the ring maps induced by subgroup inclusions.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::groebner::quotient_finite_dimension;
use crate::homological::gorenstein_shift;
use crate::modules::{is_free, restrict_scalars, PresentedModule};
use crate::poly::{GradedPolyRing, RingMap};

const BUILTIN: &str = include_str!("../data/catalog.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub dim: i64,
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InclusionSpec {
    pub big: String,
    pub small: String,
    pub images: BTreeMap<String, String>,
}

/// Catalog file contents.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogFile {
    #[serde(default)]
    pub schema: Option<u32>,
    pub groups: Vec<GroupSpec>,
    pub inclusions: Vec<InclusionSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupEntry {
    pub name: String,
    pub ring: GradedPolyRing,
    pub dim: i64,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionEntry {
    pub big: String,
    pub small: String,
    pub theta: RingMap,
    pub codim: i64,
}

impl InclusionEntry {
    /// `"big>small"`, the name used on the command line.
    pub fn pair_name(&self) -> String {
        format!("{}>{}", self.big, self.small)
    }
}

/// An inclusion rejected at load time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub pair: String,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub groups: Vec<GroupEntry>,
    pub inclusions: Vec<InclusionEntry>,
    pub rejected: Vec<Rejection>,
}

/// Machine-checked invariants of one inclusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionCertificate {
    pub pair: String,
    pub codim: i64,
    pub venkov: bool,
    pub gorenstein_shift: Option<i64>,
    pub free: bool,
    pub equal_rank: bool,
    pub passed: bool,
}

/// Is the target finitely generated over the source?
pub fn venkov_finite(theta: &RingMap) -> Result<bool, AlgebraError> {
    Ok(quotient_finite_dimension(theta.target(), &theta.nonzero_images())?.is_some())
}

fn build_group(spec: &GroupSpec) -> Result<GroupEntry, AlgebraError> {
    if spec.dim < 0 {
        return Err(AlgebraError::Invalid(format!(
            "group {} has negative dimension",
            spec.name
        )));
    }
    let ring = GradedPolyRing::new(spec.generators.iter().map(|g| (g.name.clone(), g.degree)))
        .map_err(|e| AlgebraError::DegreeMismatch(format!("group {}: {e}", spec.name)))?;
    let rank = ring.nvars();
    Ok(GroupEntry {
        name: spec.name.clone(),
        ring,
        dim: spec.dim,
        rank,
    })
}

impl Catalog {
    pub fn from_file(file: &CatalogFile) -> Result<Catalog, AlgebraError> {
        let mut groups: Vec<GroupEntry> = Vec::new();
        for g in &file.groups {
            if groups.iter().any(|h| h.name == g.name) {
                return Err(AlgebraError::Invalid(format!("duplicate group {}", g.name)));
            }
            groups.push(build_group(g)?);
        }
        let find = |name: &str| {
            groups
                .iter()
                .find(|g| g.name == name)
                .ok_or_else(|| AlgebraError::Invalid(format!("unknown group {name:?}")))
        };
        let mut inclusions = Vec::new();
        let mut rejected = Vec::new();
        for inc in &file.inclusions {
            let big = find(&inc.big)?;
            let small = find(&inc.small)?;
            let pair = format!("{}>{}", inc.big, inc.small);
            let theta = RingMap::from_strings(big.ring.clone(), small.ring.clone(), &inc.images)?;
            let codim = big.dim - small.dim;
            if codim < 0 {
                return Err(AlgebraError::Invalid(format!(
                    "{pair}: negative codimension"
                )));
            }
            if !venkov_finite(&theta)? {
                rejected.push(Rejection {
                    pair,
                    reason: "target not finitely generated over source".into(),
                });
                continue;
            }
            inclusions.push(InclusionEntry {
                big: inc.big.clone(),
                small: inc.small.clone(),
                theta,
                codim,
            });
        }
        Ok(Catalog {
            groups,
            inclusions,
            rejected,
        })
    }

    pub fn parse(json: &str) -> Result<Catalog, AlgebraError> {
        let file: CatalogFile = serde_json::from_str(json)
            .map_err(|e| AlgebraError::Invalid(format!("catalog JSON: {e}")))?;
        Self::from_file(&file)
    }

    pub fn group(&self, name: &str) -> Option<&GroupEntry> {
        self.groups.iter().find(|g| g.name == name)
    }

    /// Looks up `"big>small"`.
    pub fn inclusion(&self, pair: &str) -> Option<&InclusionEntry> {
        let (big, small) = pair.split_once('>')?;
        self.inclusions
            .iter()
            .find(|i| i.big == big.trim() && i.small == small.trim())
    }

    /// Composite of a chain of inclusions, largest group first.
    pub fn composite(&self, chain: &[&str]) -> Result<RingMap, AlgebraError> {
        let mut maps = chain.windows(2).map(|w| {
            self.inclusion(&format!("{}>{}", w[0], w[1]))
                .map(|e| e.theta.clone())
                .ok_or_else(|| AlgebraError::Invalid(format!("no inclusion {}>{}", w[0], w[1])))
        });
        let first = maps
            .next()
            .ok_or_else(|| AlgebraError::Invalid("chain needs two groups".into()))??;
        maps.try_fold(first, |acc, m| acc.then(&m?))
    }
}

pub fn load_catalog(path: &Path) -> Result<Catalog, AlgebraError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AlgebraError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    Catalog::parse(&text)
}

pub fn builtin_catalog() -> Catalog {
    Catalog::parse(BUILTIN).expect("builtin catalog is valid")
}

/// Checks Venkov finiteness, the Gorenstein shift against the
/// codimension, and freeness against rank equality.
pub fn certify(entry: &InclusionEntry) -> Result<InclusionCertificate, AlgebraError> {
    let theta = &entry.theta;
    let venkov = venkov_finite(theta)?;
    let report = gorenstein_shift(theta, Some(entry.codim))?;
    let r = PresentedModule::ring_module(theta.target());
    let (free, _) = is_free(&restrict_scalars(theta, &r)?);
    let equal_rank = theta.source().nvars() == theta.target().nvars();
    let passed = venkov && report.detected == Some(entry.codim) && free == equal_rank;
    Ok(InclusionCertificate {
        pair: entry.pair_name(),
        codim: entry.codim,
        venkov,
        gorenstein_shift: report.detected,
        free,
        equal_rank,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_entries() {
        let cat = builtin_catalog();
        assert!(cat.rejected.is_empty());
        let so2 = cat.group("SO(2)").unwrap();
        assert_eq!(
            (so2.dim, so2.rank, so2.ring.degrees().to_vec()),
            (1, 1, vec![2])
        );
        let u3 = cat.group("U(3)").unwrap();
        assert_eq!((u3.rank, u3.dim), (3, 9));
        let su2 = cat.group("SU(2)").unwrap();
        assert_eq!((su2.dim, su2.ring.degrees().to_vec()), (3, vec![4]));
        let e = cat.inclusion("SU(3)>SU(2)").unwrap();
        assert_eq!(e.codim, 5);
        let r = e.theta.target();
        assert_eq!(e.theta.images(), &[r.var(0), crate::poly::Poly::zero()]);
        let e = cat.inclusion("U(2)>T2").unwrap();
        assert_eq!(e.codim, 2);
        assert_eq!(
            e.theta.images()[1],
            e.theta.target().parse("t1*t2").unwrap()
        );
        assert_eq!(cat.inclusion("T3>T2").unwrap().codim, 1);
    }

    #[test]
    fn composite_torus_in_su3() {
        let cat = builtin_catalog();
        let via = cat.composite(&["SU(3)", "SU(2)", "T1"]).unwrap();
        assert_eq!(via, cat.inclusion("SU(3)>T1").unwrap().theta);
    }

    #[test]
    fn rejects_non_finite_maps() {
        let json = r#"{"groups": [
            {"name": "A", "dim": 1, "generators": [{"name": "a", "degree": 2}]},
            {"name": "B", "dim": 0, "generators": [{"name": "x", "degree": 2}, {"name": "y", "degree": 2}]}],
            "inclusions": [{"big": "A", "small": "B", "images": {"a": "x"}}]}"#;
        let cat = Catalog::parse(json).unwrap();
        assert!(cat.inclusions.is_empty());
        assert_eq!(cat.rejected[0].pair, "A>B");
        let bad = json.replace(
            "\"degree\": 2}]},\n            {\"name\": \"B\"",
            "\"degree\": 3}]},\n            {\"name\": \"B\"",
        );
        assert!(matches!(
            Catalog::parse(&bad),
            Err(AlgebraError::DegreeMismatch(_))
        ));
    }

    #[test]
    fn certificates_hold() {
        let cat = builtin_catalog();
        for e in &cat.inclusions {
            let c = certify(e).unwrap();
            assert!(c.passed, "{c:?}");
        }
    }
}
