//! Locating named datasets in a data directory.
//!
//! A dataset `name` is either canonical (`name.txt` edge list, optional
//! `name.features`) or raw (`name.cites` id pairs, optional `name.content`),
//! which is re-indexed on load. Canonical files win when both exist.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::{
    convert_raw, count_feature_rows, load_edge_list, load_features, FeatureMatrix, Graph,
};

pub const CITATION_DATASETS: [&str; 3] = ["cora", "citeseer", "pubmed"];

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub graph: Graph,
    pub features: Option<FeatureMatrix>,
    pub source: PathBuf,
}

/// Loads `name` from `dir`, or `Ok(None)` when no file for it exists.
pub fn find_dataset(dir: &Path, name: &str) -> Result<Option<Dataset>> {
    let canonical = dir.join(format!("{name}.txt"));
    if canonical.is_file() {
        let feat_path = dir.join(format!("{name}.features"));
        let (graph, features) = if feat_path.is_file() {
            let n = count_feature_rows(&feat_path)?;
            (
                load_edge_list(&canonical, Some(n))?,
                Some(load_features(&feat_path, n)?),
            )
        } else {
            (load_edge_list(&canonical, None)?, None)
        };
        return Ok(Some(Dataset {
            name: name.to_string(),
            graph,
            features,
            source: canonical,
        }));
    }
    let raw = dir.join(format!("{name}.cites"));
    if raw.is_file() {
        let read = |p: &Path| fs::read_to_string(p).map_err(|e| Error::io(p, e));
        let content_path = dir.join(format!("{name}.content"));
        let content = if content_path.is_file() {
            Some(read(&content_path)?)
        } else {
            None
        };
        let converted = convert_raw(&read(&raw)?, content.as_deref(), &raw)?;
        return Ok(Some(Dataset {
            name: name.to_string(),
            graph: converted.graph,
            features: converted.features,
            source: raw,
        }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_raw_and_missing() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.txt"), "0 1\n1 2\n").unwrap();
        fs::write(dir.path().join("b.cites"), "x y\ny z\n").unwrap();
        fs::write(dir.path().join("c.txt"), "0 1\n").unwrap();
        fs::write(dir.path().join("c.features"), "1\n2\n3\n").unwrap();

        let a = find_dataset(dir.path(), "a").unwrap().unwrap();
        assert_eq!((a.graph.n(), a.graph.num_edges()), (3, 2));
        let b = find_dataset(dir.path(), "b").unwrap().unwrap();
        assert_eq!(b.graph, a.graph);
        let c = find_dataset(dir.path(), "c").unwrap().unwrap();
        assert_eq!(c.graph.n(), 3);
        assert_eq!(c.features.unwrap().rows(), 3);
        assert!(find_dataset(dir.path(), "cora").unwrap().is_none());
    }
}
