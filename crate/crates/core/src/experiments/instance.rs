use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ExperimentError;
use crate::graph::GraphKind;
use crate::group::{ElementSet, FamilySpec, FiniteGroup, GroupError};

/// A group named by family or read from a multiplication-table file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Family(FamilySpec),
    File(PathBuf),
}

impl GroupSource {
    pub fn load(&self) -> Result<(FiniteGroup, GroupDescriptor), ExperimentError> {
        match self {
            GroupSource::Family(spec) => {
                let group = spec.build().map_err(ExperimentError::from_group)?;
                let descriptor = GroupDescriptor::family(spec, &group);
                Ok((group, descriptor))
            }
            GroupSource::File(path) => load_table_file(path),
        }
    }
}

fn load_table_file(path: &Path) -> Result<(FiniteGroup, GroupDescriptor), ExperimentError> {
    let bytes = std::fs::read(path)
        .map_err(|e| ExperimentError::Parse(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| ExperimentError::Parse(format!("{}: not UTF-8", path.display())))?;
    let group = FiniteGroup::parse_table_text(&text).map_err(ExperimentError::from_group)?;
    let digest = Sha256::digest(&bytes);
    let sha256: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    let descriptor = GroupDescriptor {
        source: "file".to_string(),
        name: format!("file:{}", path.display()),
        order: group.order(),
        sha256: Some(sha256),
    };
    Ok((group, descriptor))
}

impl fmt::Display for GroupSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSource::Family(spec) => write!(f, "{spec}"),
            GroupSource::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

impl FromStr for GroupSource {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().strip_prefix("file:") {
            Some(path) => Ok(GroupSource::File(PathBuf::from(path))),
            None => s.parse().map(GroupSource::Family).map_err(ExperimentError::from_group),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    /// `family` or `file`.
    pub source: String,
    pub name: String,
    pub order: usize,
    pub sha256: Option<String>,
}

impl GroupDescriptor {
    pub fn family(spec: &FamilySpec, group: &FiniteGroup) -> Self {
        GroupDescriptor {
            source: "family".to_string(),
            name: spec.to_string(),
            order: group.order(),
            sha256: None,
        }
    }
}

/// Element indices as written by the user; `-k` stands for the inverse of `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSpec(pub Vec<i64>);

impl SetSpec {
    pub fn resolve(&self, group: &FiniteGroup) -> Result<ElementSet, ExperimentError> {
        let n = group.order();
        let mut out = Vec::with_capacity(self.0.len());
        for &raw in &self.0 {
            let k = raw.unsigned_abs() as usize;
            if k >= n {
                return Err(ExperimentError::Validation(
                    GroupError::ElementOutOfRange { element: k, order: n }.to_string(),
                ));
            }
            out.push(if raw < 0 { group.inv(k) } else { k });
        }
        Ok(ElementSet::new(out))
    }
}

impl From<&ElementSet> for SetSpec {
    fn from(set: &ElementSet) -> Self {
        SetSpec(set.iter().map(|x| x as i64).collect())
    }
}

impl FromStr for SetSpec {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut out = Vec::new();
        for line in body.lines() {
            let line = line.split('#').next().unwrap_or("");
            for token in line.split(|c: char| c == ',' || c.is_whitespace()) {
                if token.is_empty() {
                    continue;
                }
                let v: i64 = token
                    .parse()
                    .map_err(|_| ExperimentError::Parse(format!("bad element `{token}`")))?;
                out.push(v);
            }
        }
        Ok(SetSpec(out))
    }
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `<group> <set> <kind>`, e.g. `cyclic:5 1,4 cayley_sum`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub group: GroupSource,
    pub set: SetSpec,
    pub kind: GraphKind,
}

impl InstanceSpec {
    pub fn new(group: GroupSource, set: SetSpec, kind: GraphKind) -> Self {
        InstanceSpec { group, set, kind }
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.group, self.set, self.kind)
    }
}

impl FromStr for InstanceSpec {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fields: Vec<&str> = s.split_whitespace().collect();
        let [group, set, kind] = fields[..] else {
            return Err(ExperimentError::Parse(format!(
                "expected `<group> <set> <kind>`, got `{s}`"
            )));
        };
        Ok(InstanceSpec {
            group: group.parse()?,
            set: set.parse()?,
            kind: parse_kind(kind)?,
        })
    }
}

pub fn parse_kind(text: &str) -> Result<GraphKind, ExperimentError> {
    match text.parse::<GraphKind>() {
        Ok(kind @ (GraphKind::Cayley | GraphKind::CayleySum)) => Ok(kind),
        _ => Err(ExperimentError::Parse(format!(
            "kind must be cayley or cayley_sum, got `{text}`"
        ))),
    }
}

/// Stable identifier `<group> <set> <kind>` with the resolved set.
pub fn instance_id(group: &GroupDescriptor, set: &ElementSet, kind: GraphKind) -> String {
    let members: Vec<String> = set.iter().map(|x| x.to_string()).collect();
    format!("{} {} {}", group.name, members.join(","), kind)
}
