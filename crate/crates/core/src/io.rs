//! JSON formats for matrices, groups and characters.
//!
//! Matrix: `{"n": 2, "entries": [[{"re": 1, "im": 0}, ...], ...]}`; plain
//! numbers are accepted for real entries. Group: `{"n": 4, "generators":
//! ["(1 2)", "(1 2 3 4)"], "name": "S_4"}` or a built-in name. Character:
//! `{"group": <group>, "values": [{"class_rep": "(1 2)", "re": -1, "im": 0}],
//! "label": "sign"}`.

use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;
use serde_json::Value;

use crate::characters::{character_table, sn_irreducible_on, CharacterFn, Partition};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::perm::{PermGroup, Permutation};

/// Serde adapter writing a complex number as `{"re": .., "im": ..}`.
/// Reading also accepts a bare number.
pub mod complex {
    use super::*;
    use serde::Deserializer;

    #[derive(Serialize, Deserialize)]
    struct Parts {
        re: f64,
        #[serde(default)]
        im: f64,
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Either {
        Real(f64),
        Parts(Parts),
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        Parts { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Complex64, D::Error> {
        Ok(match Either::deserialize(d)? {
            Either::Real(re) => Complex64::new(re, 0.0),
            Either::Parts(p) => Complex64::new(p.re, p.im),
        })
    }

    /// Same format for a `Vec<Complex64>`.
    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|z| Parts { re: z.re, im: z.im }))
        }
    }
}

#[derive(Deserialize)]
struct MatrixIn {
    n: Option<usize>,
    entries: Vec<Vec<Entry>>,
}

#[derive(Deserialize)]
struct Entry(#[serde(with = "complex")] Complex64);

/// Parses matrix JSON text.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let m: MatrixIn = serde_json::from_str(text)?;
    let rows: Vec<Vec<Complex64>> = m.entries.into_iter().map(|r| r.into_iter().map(|e| e.0).collect()).collect();
    let a = ComplexMatrix::from_rows(&rows)?;
    if let Some(n) = m.n {
        if n != a.rows() || n != a.cols() {
            return Err(Error::InvalidMatrix(format!("declared n = {n} but entries are {}x{}", a.rows(), a.cols())));
        }
    }
    Ok(a)
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        "0.0".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Full complex form with 17 significant digits.
pub fn matrix_to_json(a: &ComplexMatrix) -> String {
    let rows: Vec<String> = (0..a.rows())
        .map(|i| {
            let cells: Vec<String> =
                a.row(i).iter().map(|z| format!("{{\"re\": {}, \"im\": {}}}", fmt_f64(z.re), fmt_f64(z.im))).collect();
            format!("    [{}]", cells.join(", "))
        })
        .collect();
    format!("{{\n  \"n\": {},\n  \"entries\": [\n{}\n  ]\n}}\n", a.rows(), rows.join(",\n"))
}

/// Embeds a matrix in a serde report using the 17-digit writer.
pub struct MatrixJson<'a>(pub &'a ComplexMatrix);

impl Serialize for MatrixJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(matrix_to_json(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

pub fn write_matrix(path: impl AsRef<Path>, a: &ComplexMatrix) -> Result<()> {
    Ok(std::fs::write(path, matrix_to_json(a))?)
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    n: usize,
    generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

fn group_from_value(v: &Value) -> Result<PermGroup> {
    match v {
        Value::String(name) => PermGroup::named(name),
        Value::Object(_) => {
            let g: GroupJson = serde_json::from_value(v.clone())?;
            let gens =
                g.generators.iter().map(|s| Permutation::parse_cycles(s, g.n)).collect::<Result<Vec<_>>>()?;
            let group = PermGroup::generate(g.n, &gens)?;
            Ok(match g.name {
                Some(name) => group.with_name(name),
                None => group,
            })
        }
        _ => Err(Error::Parse("group must be a name or an object".into())),
    }
}

/// Group JSON text, or a bare name such as `S_4` (with or without quotes).
pub fn parse_group(text: &str) -> Result<PermGroup> {
    let t = text.trim();
    match serde_json::from_str::<Value>(t) {
        Ok(v) => group_from_value(&v),
        Err(_) => PermGroup::named(t),
    }
}

/// A path to group JSON, inline JSON, or a built-in name.
pub fn load_group(spec: &str) -> Result<PermGroup> {
    let path = Path::new(spec);
    if path.is_file() {
        parse_group(&std::fs::read_to_string(path)?)
    } else {
        parse_group(spec)
    }
}

pub fn group_to_value(g: &PermGroup) -> Value {
    serde_json::to_value(GroupJson {
        n: g.degree(),
        generators: g.generators().iter().map(ToString::to_string).collect(),
        name: g.name().map(str::to_string),
    })
    .expect("plain data")
}

#[derive(Deserialize)]
struct CharacterIn {
    group: Option<Value>,
    values: Vec<ClassValue>,
    #[serde(default)]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct ClassValue {
    class_rep: String,
    re: f64,
    #[serde(default)]
    im: f64,
}

/// Parses character JSON. Every class needs a value; `class_rep` may name
/// any member of the class. When `group` is given the embedded group (if
/// any) must equal it.
pub fn parse_character(text: &str, group: Option<&Arc<PermGroup>>) -> Result<CharacterFn> {
    let c: CharacterIn = serde_json::from_str(text)?;
    let group = match (c.group.as_ref().map(group_from_value).transpose()?, group) {
        (Some(embedded), Some(given)) => {
            if !embedded.same_group(given) {
                return Err(Error::GroupMismatch);
            }
            given.clone()
        }
        (Some(embedded), None) => Arc::new(embedded),
        (None, Some(given)) => given.clone(),
        (None, None) => return Err(Error::Parse("character JSON has no group".into())),
    };
    let mut values: Vec<Option<Complex64>> = vec![None; group.num_classes()];
    for v in &c.values {
        let g = Permutation::parse_cycles(&v.class_rep, group.degree())?;
        let idx = group.index_of(&g).ok_or_else(|| Error::ElementNotInGroup(v.class_rep.clone()))?;
        let class = group.class_of(idx);
        let z = Complex64::new(v.re, v.im);
        match values[class] {
            Some(prev) if (prev - z).norm() > 1e-12 => {
                return Err(Error::Parse(format!("conflicting values for the class of {}", v.class_rep)));
            }
            _ => values[class] = Some(z),
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            v.ok_or_else(|| Error::Parse(format!("no value for the class of {}", group.class_representative(k))))
        })
        .collect::<Result<Vec<_>>>()?;
    CharacterFn::new(group, values, c.label.unwrap_or_else(|| "chi".into()))
}

pub fn character_to_value(chi: &CharacterFn) -> Value {
    let g = chi.group();
    let values: Vec<ClassValue> = chi
        .class_values()
        .iter()
        .enumerate()
        .map(|(k, z)| ClassValue { class_rep: g.class_representative(k).to_string(), re: z.re, im: z.im })
        .collect();
    serde_json::json!({
        "group": group_to_value(g),
        "values": values,
        "label": chi.label(),
    })
}

/// A character of `group` from a shorthand, a path, or inline JSON.
///
/// Shorthands: `principal` (or `trivial`), `sign`, `irr:K` (the `K`-th row
/// of the computed table, 1-based, principal first), `partition:3,1` (the
/// Murnaghan-Nakayama character; `group` must be the full `S_n`).
pub fn load_character(spec: &str, group: &Arc<PermGroup>) -> Result<CharacterFn> {
    let s = spec.trim();
    if s.eq_ignore_ascii_case("principal") || s.eq_ignore_ascii_case("trivial") {
        return Ok(CharacterFn::principal(group));
    }
    if s.eq_ignore_ascii_case("sign") {
        return Ok(CharacterFn::sign(group));
    }
    if let Some(k) = s.strip_prefix("irr:") {
        let k: usize = k.trim().parse().map_err(|_| Error::Parse(format!("bad character index in {s:?}")))?;
        let table = character_table(group)?;
        if k == 0 || k > table.len() {
            return Err(Error::IndexOutOfRange { index: k, bound: table.len() });
        }
        return Ok(table.characters[k - 1].clone());
    }
    if let Some(p) = s.strip_prefix("partition:") {
        return sn_irreducible_on(group, &p.parse::<Partition>()?);
    }
    parse_character(&read_text_arg(s)?, Some(group))
}

/// Splits a comma-separated list of group specs, keeping commas inside
/// brackets (`Young:[2,2]`).
pub fn split_group_list(list: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in list.chars() {
        match ch {
            '[' | '{' => depth += 1,
            ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Reads a file if `spec` names one, otherwise returns `spec` itself.
pub fn read_text_arg(spec: &str) -> Result<String> {
    let path = Path::new(spec);
    if path.is_file() {
        Ok(std::fs::read_to_string(path)?)
    } else {
        Ok(spec.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let a = ComplexMatrix::from_rows(&[
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.1, -1.0 / 3.0)],
            vec![Complex64::new(0.1, 1.0 / 3.0), Complex64::new(2.0, 0.0)],
        ])
        .unwrap();
        let text = matrix_to_json(&a);
        assert_eq!(parse_matrix(&text).unwrap(), a);
        let wrapped = serde_json::to_string(&serde_json::json!({ "m": serde_json::to_value(MatrixJson(&a)).unwrap() })).unwrap();
        assert!(wrapped.contains("\"entries\""));
    }

    #[test]
    fn real_shorthand_and_errors() {
        let a = parse_matrix(r#"{"entries": [[1, 2], [3, 4.5]]}"#).unwrap();
        assert_eq!(a[(1, 1)], Complex64::new(4.5, 0.0));
        assert!(parse_matrix(r#"{"n": 3, "entries": [[1, 2], [3, 4]]}"#).is_err());
        assert!(parse_matrix(r#"{"entries": [[1, 2], [3]]}"#).is_err());
        assert!(parse_matrix("not json").is_err());
    }

    #[test]
    fn group_formats() {
        let g = parse_group(r#"{"n": 4, "generators": ["(1 2)", "(1 2 3 4)"], "name": "S_4"}"#).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(parse_group("A_4").unwrap().order(), 12);
        assert_eq!(parse_group("\"Klein\"").unwrap().order(), 4);
        let back = parse_group(&group_to_value(&g).to_string()).unwrap();
        assert!(back.same_group(&g));
        assert!(parse_group("Q_8").is_err());
    }

    #[test]
    fn character_shorthands() {
        let s3 = Arc::new(PermGroup::symmetric(3).unwrap());
        assert!(load_character("principal", &s3).unwrap().is_principal());
        assert_eq!(load_character("sign", &s3).unwrap().degree(), Complex64::new(1.0, 0.0));
        assert_eq!(load_character("irr:3", &s3).unwrap().degree(), Complex64::new(2.0, 0.0));
        assert_eq!(load_character("partition:2,1", &s3).unwrap().degree(), Complex64::new(2.0, 0.0));
        assert!(load_character("irr:4", &s3).is_err());
        assert_eq!(split_group_list("S_4, Young:[2,2],Klein"), vec!["S_4", "Young:[2,2]", "Klein"]);
    }

    #[test]
    fn character_formats() {
        let text = r#"{"group": "S_3", "values": [
            {"class_rep": "()", "re": 1}, {"class_rep": "(2 3)", "re": -1}, {"class_rep": "(1 3 2)", "re": 1}
        ], "label": "sign"}"#;
        let chi = parse_character(text, None).unwrap();
        assert!(chi.is_irreducible());
        let g = chi.group();
        assert_eq!(chi.value_of(&Permutation::parse_cycles("(1 2)", 3).unwrap()).unwrap(), Complex64::new(-1.0, 0.0));
        let again = parse_character(&character_to_value(&chi).to_string(), Some(g)).unwrap();
        assert_eq!(again.class_values(), chi.class_values());

        let missing = r#"{"group": "S_3", "values": [{"class_rep": "()", "re": 1}]}"#;
        assert!(parse_character(missing, None).is_err());
        let c3 = Arc::new(PermGroup::cyclic(3).unwrap());
        assert_eq!(parse_character(text, Some(&c3)).unwrap_err(), Error::GroupMismatch);
        let outside = r#"{"group": "A_3", "values": [{"class_rep": "(1 2)", "re": 1}]}"#;
        assert!(matches!(parse_character(outside, None), Err(Error::ElementNotInGroup(_))));
    }
}
