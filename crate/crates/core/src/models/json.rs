//! Model files and built-in model names.
//!
//! ```json
//! {"k": 2, "two_ell": 2, "cap": 4,
//!  "entries": [{"sym": [2, 0], "ext": [1, 2], "value": {"re": "-1", "im": "0"}}]}
//! ```
//!
//! `ext` lists one-based exterior indices in strictly increasing order.

use serde::{Deserialize, Serialize};

use super::builtin::{
    charpoly_model, circuit_neg_model, circuit_odd_model, circuit_pos_model, matchings_model,
};
use super::model::EdgeColoringModel;
use crate::algebra::{ExtBasisIndex, GaussianRational, SymBasisIndex};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct ModelFile {
    k: usize,
    two_ell: usize,
    #[serde(default)]
    cap: Option<usize>,
    entries: Vec<EntryFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EntryFile {
    sym: Vec<u32>,
    #[serde(default)]
    ext: Vec<usize>,
    value: GaussianRational,
}

pub fn model_from_json(text: &str) -> Result<EdgeColoringModel<GaussianRational>> {
    let file: ModelFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidModel(format!("bad model JSON: {e}")))?;
    let mut h = EdgeColoringModel::new(file.k, file.two_ell, file.cap)?;
    for (n, entry) in file.entries.into_iter().enumerate() {
        if entry.ext.contains(&0) {
            return Err(Error::InvalidModel(format!(
                "entry {n}: exterior indices are one-based"
            )));
        }
        let sym = SymBasisIndex::new(entry.sym);
        let ext = ExtBasisIndex::new(entry.ext.iter().map(|i| i - 1).collect())
            .map_err(|e| Error::InvalidModel(format!("entry {n}: {e}")))?;
        if let Some(cap) = file.cap {
            if sym.degree() + ext.len() > cap {
                return Err(Error::InvalidModel(format!(
                    "entry {n} exceeds the cap {cap}"
                )));
            }
        }
        h.set(sym, ext, entry.value)
            .map_err(|e| Error::InvalidModel(format!("entry {n}: {e}")))?;
    }
    Ok(h)
}

pub fn model_to_json(h: &EdgeColoringModel<GaussianRational>) -> String {
    let file = ModelFile {
        k: h.k(),
        two_ell: h.two_ell(),
        cap: h.cap(),
        entries: h
            .entries()
            .into_iter()
            .map(|(sym, ext, value)| EntryFile {
                sym: sym.counts().to_vec(),
                ext: ext.indices().iter().map(|i| i + 1).collect(),
                value,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

/// Build a named model: `matchings`, `charpoly?t=p/q`, `circuit-pos?k=K`,
/// `circuit-neg?l=L`, `circuit-odd?l=L`. Capped models are completed up to
/// total degree `cap`.
pub fn builtin_model(spec: &str, cap: usize) -> Result<EdgeColoringModel<GaussianRational>> {
    let (name, query) = spec.split_once('?').unwrap_or((spec, ""));
    let mut params = std::collections::BTreeMap::new();
    for kv in query.split('&').filter(|s| !s.is_empty()) {
        let (key, value) = kv
            .split_once('=')
            .ok_or_else(|| Error::InvalidModel(format!("parameter {kv:?} is not key=value")))?;
        params.insert(key.trim(), value.trim());
    }
    let take = |key: &str| -> Result<&str> {
        params
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidModel(format!("{name} needs `{key}=`")))
    };
    let int = |key: &str| -> Result<usize> {
        take(key)?
            .parse()
            .map_err(|_| Error::InvalidModel(format!("`{key}` must be a nonnegative integer")))
    };
    let allowed: &[&str] = match name {
        "matchings" => &[],
        "charpoly" => &["t"],
        "circuit-pos" => &["k"],
        "circuit-neg" | "circuit-odd" => &["l"],
        other => return Err(Error::InvalidModel(format!("unknown model {other:?}"))),
    };
    if let Some(extra) = params.keys().find(|k| !allowed.contains(k)) {
        return Err(Error::InvalidModel(format!(
            "{name} takes no parameter `{extra}`"
        )));
    }
    match name {
        "matchings" => Ok(matchings_model(cap)),
        "charpoly" => Ok(charpoly_model(take("t")?.parse()?, cap)),
        "circuit-pos" => circuit_pos_model(int("k")?, cap),
        "circuit-neg" => circuit_neg_model(int("l")?),
        "circuit-odd" => circuit_odd_model(int("l")?, cap),
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let h = builtin_model("charpoly?t=-1/2", 3).unwrap();
        let back = model_from_json(&model_to_json(&h)).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn json_reads_plain_values() {
        let text = r#"{"k": 1, "two_ell": 2, "entries": [
            {"sym": [2], "ext": [1, 2], "value": "3/4"},
            {"sym": [0], "value": {"re": "0", "im": "1"}}]}"#;
        let h = model_from_json(text).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.cap(), None);
        let v = h
            .get(
                &SymBasisIndex::new(vec![2]),
                &ExtBasisIndex::new(vec![0, 1]).unwrap(),
            )
            .unwrap();
        assert_eq!(v, GaussianRational::ratio(3, 4));
    }

    #[test]
    fn json_rejects_bad_entries() {
        let unsorted =
            r#"{"k": 0, "two_ell": 2, "entries": [{"sym": [], "ext": [2, 1], "value": "1"}]}"#;
        assert!(model_from_json(unsorted).is_err());
        let zero_based =
            r#"{"k": 0, "two_ell": 2, "entries": [{"sym": [], "ext": [0], "value": "1"}]}"#;
        assert!(model_from_json(zero_based).is_err());
        let odd = r#"{"k": 0, "two_ell": 3, "entries": []}"#;
        assert!(model_from_json(odd).is_err());
        let wrong_k = r#"{"k": 2, "two_ell": 0, "entries": [{"sym": [1], "value": "1"}]}"#;
        assert!(model_from_json(wrong_k).is_err());
        let over_cap =
            r#"{"k": 1, "two_ell": 0, "cap": 1, "entries": [{"sym": [2], "value": "1"}]}"#;
        assert!(model_from_json(over_cap).is_err());
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin_model("matchings", 3).unwrap().k(), 2);
        assert_eq!(builtin_model("circuit-pos?k=3", 4).unwrap().k(), 3);
        assert_eq!(builtin_model("circuit-neg?l=2", 4).unwrap().two_ell(), 4);
        let odd = builtin_model("circuit-odd?l=1", 4).unwrap();
        assert_eq!((odd.k(), odd.two_ell()), (1, 2));
        for bad in [
            "nope",
            "charpoly",
            "charpoly?t=x",
            "circuit-pos?k=-1",
            "matchings?t=1",
            "circuit-neg?l",
        ] {
            assert!(builtin_model(bad, 3).is_err(), "{bad}");
        }
    }
}
