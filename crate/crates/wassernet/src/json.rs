//! JSON schemas for the file formats the CLI reads and writes.
//!
//! A space is `{ "n": int, "d": [[..]], "labels": [..] | null }`. Wherever a
//! space is embedded (measures, maps, groups) it may instead be a string,
//! which is resolved as a path relative to the referencing file's directory.
//! Deserialized spaces are re-validated, so a hand-edited file that breaks a
//! metric axiom is rejected with the axiom's witnesses.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::approx::PointMap;
use crate::error::Error;
use crate::metric::{validate_metric_with, IsometryGroup, MetricPair, Permutation, SharedSpace};
use crate::net::P2Net;
use crate::tol;
use crate::transport::DiscreteMeasure;

/// Errors arising from file IO or schema violations, on top of domain
/// errors.
#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error in {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Schema(String),
}

pub type JsonResult<T> = std::result::Result<T, JsonError>;

fn read_file(path: &Path) -> JsonResult<String> {
    std::fs::read_to_string(path).map_err(|source| JsonError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> JsonResult<T> {
    serde_json::from_str(text).map_err(|source| JsonError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceDto {
    pub n: usize,
    pub d: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl SpaceDto {
    pub fn from_space(space: &SharedSpace) -> Self {
        SpaceDto {
            n: space.n(),
            d: space.rows(),
            labels: space.labels().map(|ls| ls.to_vec()),
        }
    }

    pub fn into_space(self) -> JsonResult<SharedSpace> {
        if self.d.len() != self.n {
            return Err(JsonError::Schema(format!(
                "declared n = {} but the matrix has {} rows",
                self.n,
                self.d.len()
            )));
        }
        let space = validate_metric_with(&self.d, self.labels, tol::METRIC)?;
        Ok(Arc::new(space))
    }
}

/// A space given inline or as a path to another JSON file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Path(String),
    Inline(SpaceDto),
}

impl SpaceRef {
    pub fn resolve(self, base_dir: &Path) -> JsonResult<SharedSpace> {
        match self {
            SpaceRef::Inline(dto) => dto.into_space(),
            SpaceRef::Path(rel) => load_space(&base_dir.join(rel)),
        }
    }
}

pub fn load_space(path: &Path) -> JsonResult<SharedSpace> {
    let dto: SpaceDto = parse(path, &read_file(path)?)?;
    dto.into_space()
}

pub fn save_space(path: &Path, space: &SharedSpace) -> JsonResult<()> {
    write_pretty(path, &SpaceDto::from_space(space))
}

pub fn write_pretty<T: Serialize>(path: &Path, value: &T) -> JsonResult<()> {
    let text = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    std::fs::write(path, text + "\n").map_err(|source| JsonError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureDto {
    pub space: SpaceRef,
    pub w: Vec<f64>,
}

pub fn load_measure(path: &Path) -> JsonResult<DiscreteMeasure> {
    let dto: MeasureDto = parse(path, &read_file(path)?)?;
    let space = dto.space.resolve(&base_dir(path))?;
    Ok(DiscreteMeasure::new(space, dto.w)?)
}

/// Load a measure against an already-loaded space (checks compatibility).
pub fn load_measure_on(path: &Path, space: &SharedSpace) -> JsonResult<DiscreteMeasure> {
    let mu = load_measure(path)?;
    if **mu.space() != **space {
        return Err(JsonError::Domain(Error::MismatchedSpaces));
    }
    Ok(mu)
}

/// Maps serialize as a bare integer array, or as an object carrying the
/// spaces inline for self-contained files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapDto {
    Bare(Vec<usize>),
    Full {
        source: SpaceRef,
        target: SpaceRef,
        image: Vec<usize>,
    },
}

/// Load a map; bare-array files need the spaces supplied by the caller.
pub fn load_map(
    path: &Path,
    source: Option<SharedSpace>,
    target: Option<SharedSpace>,
) -> JsonResult<PointMap> {
    let dto: MapDto = parse(path, &read_file(path)?)?;
    let dir = base_dir(path);
    match dto {
        MapDto::Bare(image) => {
            let (Some(source), Some(target)) = (source, target) else {
                return Err(JsonError::Schema(format!(
                    "{} is a bare map; pass its source and target spaces",
                    path.display()
                )));
            };
            Ok(PointMap::new(source, target, image)?)
        }
        MapDto::Full {
            source: s,
            target: t,
            image,
        } => {
            let s = s.resolve(&dir)?;
            let t = t.resolve(&dir)?;
            if let Some(expected) = source {
                if *expected != *s {
                    return Err(JsonError::Domain(Error::MismatchedSpaces));
                }
            }
            if let Some(expected) = target {
                if *expected != *t {
                    return Err(JsonError::Domain(Error::MismatchedSpaces));
                }
            }
            Ok(PointMap::new(s, t, image)?)
        }
    }
}

pub fn map_to_dto(map: &PointMap) -> MapDto {
    MapDto::Full {
        source: SpaceRef::Inline(SpaceDto::from_space(map.source())),
        target: SpaceRef::Inline(SpaceDto::from_space(map.target())),
        image: map.image().to_vec(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairDto {
    pub space: SpaceRef,
    pub subset: Vec<usize>,
}

pub fn load_pair(path: &Path) -> JsonResult<MetricPair> {
    let dto: PairDto = parse(path, &read_file(path)?)?;
    let space = dto.space.resolve(&base_dir(path))?;
    Ok(MetricPair::new(space, dto.subset)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDto {
    pub space: SpaceRef,
    pub elements: Vec<Vec<usize>>,
}

pub fn load_group(path: &Path) -> JsonResult<IsometryGroup> {
    let dto: GroupDto = parse(path, &read_file(path)?)?;
    let space = dto.space.resolve(&base_dir(path))?;
    let elements = dto
        .elements
        .into_iter()
        .map(Permutation::new)
        .collect::<crate::error::Result<Vec<_>>>()?;
    let tol = space.tolerance();
    Ok(IsometryGroup::from_elements(space, elements, tol)?)
}

pub fn group_to_dto(group: &IsometryGroup) -> GroupDto {
    GroupDto {
        space: SpaceRef::Inline(SpaceDto::from_space(group.space())),
        elements: group
            .elements()
            .iter()
            .map(|p| p.image().to_vec())
            .collect(),
    }
}

/// Quadruple data: the base map, the optional subset map, and the group
/// tables keyed by element index.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadrupleDto {
    pub f: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fprime: Option<Vec<usize>>,
    pub theta: std::collections::BTreeMap<String, usize>,
    pub psi: std::collections::BTreeMap<String, usize>,
    pub eps: f64,
}

impl QuadrupleDto {
    pub fn table(
        map: &std::collections::BTreeMap<String, usize>,
        len: usize,
        name: &str,
    ) -> JsonResult<Vec<usize>> {
        let mut out = vec![usize::MAX; len];
        for (key, &value) in map {
            let idx: usize = key.parse().map_err(|_| {
                JsonError::Schema(format!("{name} key {key:?} is not an element index"))
            })?;
            if idx >= len {
                return Err(JsonError::Schema(format!(
                    "{name} key {idx} exceeds the group order {len}"
                )));
            }
            out[idx] = value;
        }
        if let Some(missing) = out.iter().position(|&v| v == usize::MAX) {
            return Err(JsonError::Schema(format!(
                "{name} is missing element {missing}"
            )));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetDto {
    pub base: SpaceDto,
    pub m: u32,
    /// Atom weights (rows sum to 1; the first n atoms are the Diracs).
    pub atoms: Vec<Vec<f64>>,
    /// Pairwise 2-Wasserstein matrix of the atoms.
    pub w2: Vec<Vec<f64>>,
}

impl NetDto {
    pub fn from_net(net: &P2Net) -> Self {
        NetDto {
            base: SpaceDto::from_space(net.base()),
            m: net.resolution(),
            atoms: (0..net.len())
                .map(|i| net.atom_measure(i).weights().to_vec())
                .collect(),
            w2: net.metric().rows(),
        }
    }
}
