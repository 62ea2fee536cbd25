//! Versioned JSON descriptions of groups and actions.

use std::fs;
use std::path::{Path, PathBuf};

use cyclehom::bar::{FiniteGroup, GroupAction};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub format_version: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Path(PathBuf),
    Inline(GroupFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub format_version: String,
    pub group: GroupRef,
    pub generators: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            format_version: FORMAT_VERSION.into(),
            order: g.order(),
            table: g.table(),
            names: Some(g.names().to_vec()),
        }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        check_version(&self.format_version)?;
        if self.order != self.table.len() {
            return Err(CliError::Validation(format!(
                "invalid group: order: declared {} but the table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        if let Some(names) = &self.names {
            if names.len() != self.order {
                return Err(CliError::Validation(format!(
                    "invalid group: names: {} names for {} elements",
                    names.len(),
                    self.order
                )));
            }
        }
        Ok(FiniteGroup::from_table(&self.table, self.names.clone())?)
    }
}

fn check_version(v: &str) -> Result<()> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(CliError::Parse(format!("unsupported format_version {v:?}, expected {FORMAT_VERSION:?}")))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn load_group(path: &Path) -> Result<FiniteGroup> {
    read_json::<GroupFile>(path)?.to_group()
}

/// Loads an action; a group given by path is resolved against the action
/// file's directory.
pub fn load_action(path: &Path) -> Result<GroupAction> {
    let file: ActionFile = read_json(path)?;
    check_version(&file.format_version)?;
    let group = match &file.group {
        GroupRef::Inline(g) => g.to_group()?,
        GroupRef::Path(p) => {
            let base = path.parent().unwrap_or(Path::new("."));
            load_group(&base.join(p))?
        }
    };
    Ok(GroupAction::new(group, file.generators, None)?)
}
