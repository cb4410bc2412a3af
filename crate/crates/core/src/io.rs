//! JSON file formats. Sets are ascending point lists; families are listed in
//! canonical (bitmask) order, so equal objects serialize to equal bytes.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::function_space::{CarrierChoice, FunctionSpace};
use crate::hyperspace::{HyperSpace, Variant};
use crate::space::{enumerate_topologies, generate_from_subbase, make_space, FiniteSpace};
use crate::subset::{SetFamily, SubsetBits};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, FileError> {
    let text = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FileError::Json {
        path: path.to_owned(),
        source,
    })
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FileError> {
    fs::write(path, to_json_string(value)).map_err(|source| FileError::Io {
        path: path.to_owned(),
        source,
    })
}

/// `{"n": 2, "opens": [[], [1], [0, 1]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub n: usize,
    pub opens: Vec<SubsetBits>,
}

impl SpaceFile {
    pub fn from_space(space: &FiniteSpace) -> Self {
        SpaceFile {
            n: space.n(),
            opens: space.opens().members().to_vec(),
        }
    }

    pub fn to_space(&self) -> crate::Result<FiniteSpace> {
        make_space(self.n, SetFamily::new(self.opens.clone()))
    }
}

/// `{"n": 3, "subbase": [[0], [1, 2]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubbaseFile {
    pub n: usize,
    pub subbase: Vec<SubsetBits>,
}

impl SubbaseFile {
    pub fn to_space(&self) -> crate::Result<FiniteSpace> {
        generate_from_subbase(self.n, &SetFamily::new(self.subbase.clone()))
    }
}

/// A hyperspace: its base space, hyperpoints in index order, and the opens
/// as sets of hyperpoint indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperFile {
    pub variant: Variant,
    pub base: SpaceFile,
    pub hyperpoints: Vec<SubsetBits>,
    pub opens: Vec<SubsetBits>,
}

impl HyperFile {
    pub fn from_hyperspace(h: &HyperSpace) -> Self {
        HyperFile {
            variant: h.variant(),
            base: SpaceFile::from_space(h.base()),
            hyperpoints: h.family().members().to_vec(),
            opens: h.topology().opens().members().to_vec(),
        }
    }
}

/// A function space: maps as image vectors, the minimal open
/// neighbourhood of each (as function indices), and optionally the
/// materialized opens.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuncSpaceFile {
    pub dom: SpaceFile,
    pub cod: SpaceFile,
    pub carrier: CarrierChoice,
    pub family: Vec<SubsetBits>,
    pub functions: Vec<Vec<u32>>,
    pub neighbourhoods: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<SubsetBits>>,
}

impl FuncSpaceFile {
    pub fn from_function_space(fs: &FunctionSpace, carrier: CarrierChoice, opens: Option<&FiniteSpace>) -> Self {
        FuncSpaceFile {
            dom: SpaceFile::from_space(fs.dom()),
            cod: SpaceFile::from_space(fs.cod()),
            carrier,
            family: fs.family().members().to_vec(),
            functions: fs.functions().iter().map(|f| f.image().to_vec()).collect(),
            neighbourhoods: (0..fs.len()).map(|i| fs.neighbourhood(i).to_vec()).collect(),
            opens: opens.map(|t| t.opens().members().to_vec()),
        }
    }
}

/// File name of the `index`-th space on `n` points in canonical order.
pub fn corpus_file_name(n: usize, index: usize) -> String {
    format!("n{n}-{index:04}.json")
}

/// Writes every topology on exactly `n` points into `dir`, one file each.
pub fn write_corpus(dir: &Path, n: usize) -> Result<Vec<PathBuf>, CorpusError> {
    let spaces = enumerate_topologies(n)?;
    fs::create_dir_all(dir).map_err(|source| FileError::Io {
        path: dir.to_owned(),
        source,
    })?;
    let mut paths = Vec::with_capacity(spaces.len());
    for (i, space) in spaces.iter().enumerate() {
        let path = dir.join(corpus_file_name(n, i));
        write_json(&path, &SpaceFile::from_space(space))?;
        paths.push(path);
    }
    Ok(paths)
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Compute(#[from] crate::Error),
}
