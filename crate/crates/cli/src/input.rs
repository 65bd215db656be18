//! The JSON input file: a field, an algebra, named module expressions and
//! named ideals.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use semidual_core::algebra::Ideal;
use semidual_core::linalg::{sparse_axpy, SparseVec};
use semidual_core::{ArtinAlgebra, PrimeField};

use crate::config::SessionConfig;
use crate::error::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    #[serde(default)]
    pub field: Option<FieldSpec>,
    pub algebra: AlgebraSpec,
    #[serde(default)]
    pub modules: BTreeMap<String, String>,
    #[serde(default)]
    pub ideals: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    MonomialQuotient {
        vars: Vec<String>,
        relations: Vec<String>,
    },
    /// `table[i][j]` lists the coordinates of `e_i e_j`.
    StructureConstants {
        table: Vec<Vec<Vec<i64>>>,
        #[serde(default)]
        unit_index: usize,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
    ExternalTensor {
        factors: Vec<AlgebraSpec>,
    },
}

impl InputFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::input("input file", e.to_string()))
    }

    pub fn prime(&self) -> Option<u64> {
        self.field.as_ref().map(|f| f.p)
    }
}

/// The algebra of an input file, with its factors when it is an external
/// tensor product of two algebras.
#[derive(Clone, Debug)]
pub struct BuiltAlgebra {
    pub algebra: Arc<ArtinAlgebra>,
    pub factors: Option<[Arc<ArtinAlgebra>; 2]>,
}

pub fn build_algebra(spec: &AlgebraSpec, cfg: &SessionConfig) -> Result<BuiltAlgebra, CliError> {
    let p = u32::try_from(cfg.prime)
        .map_err(|_| CliError::core("field.p", semidual_core::Error::NotPrime(cfg.prime)))?;
    let field = PrimeField::new(p).map_err(|e| CliError::core("field.p", e))?;
    let built = build_inner(spec, field, "algebra", cfg)?;
    Ok(built)
}

fn build_inner(
    spec: &AlgebraSpec,
    field: PrimeField,
    path: &str,
    cfg: &SessionConfig,
) -> Result<BuiltAlgebra, CliError> {
    let algebra = match spec {
        AlgebraSpec::MonomialQuotient { vars, relations } => {
            let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
            let rels: Vec<&str> = relations.iter().map(String::as_str).collect();
            let a = ArtinAlgebra::from_monomial_quotient(field, &vars, &rels)
                .map_err(|e| CliError::core(path, e))?;
            return finish(a, None, path, cfg);
        }
        AlgebraSpec::StructureConstants {
            table,
            unit_index,
            labels,
        } => ArtinAlgebra::from_structure_constants(field, table, *unit_index, labels.clone())
            .map_err(|e| CliError::core(path, e))?,
        AlgebraSpec::ExternalTensor { factors } => {
            if factors.is_empty() {
                return Err(CliError::input(format!("{path}.factors"), "needs at least one factor"));
            }
            let built: Vec<BuiltAlgebra> = factors
                .iter()
                .enumerate()
                .map(|(i, f)| build_inner(f, field, &format!("{path}.factors[{i}]"), cfg))
                .collect::<Result<_, _>>()?;
            let mut acc = (*built[0].algebra).clone();
            for b in &built[1..] {
                acc = ArtinAlgebra::external_tensor(&acc, &b.algebra)
                    .map_err(|e| CliError::core(path, e))?;
                cfg.check_cap(path, acc.dim())?;
            }
            let pair = (built.len() == 2).then(|| [built[0].algebra.clone(), built[1].algebra.clone()]);
            return finish(acc, pair, path, cfg);
        }
    };
    finish(algebra, None, path, cfg)
}

fn finish(
    a: ArtinAlgebra,
    factors: Option<[Arc<ArtinAlgebra>; 2]>,
    path: &str,
    cfg: &SessionConfig,
) -> Result<BuiltAlgebra, CliError> {
    cfg.check_cap(path, a.dim())?;
    Ok(BuiltAlgebra {
        algebra: Arc::new(a),
        factors,
    })
}

/// Parses an element such as `2*x*s - y + 3` as a combination of products
/// of basis labels. A factor is an integer, a basis label, or `label^k`.
pub fn parse_element(alg: &ArtinAlgebra, text: &str) -> Result<SparseVec, String> {
    let f = alg.field();
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err("empty element".into());
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && !current.is_empty() {
            terms.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && current.is_empty() {
            negative ^= ch == '-';
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return Err(format!("dangling sign in `{text}`"));
    }
    terms.push((negative, current));
    let mut total: SparseVec = Vec::new();
    for (neg, term) in terms {
        let mut value = alg.unit();
        for factor in term.split('*') {
            let v = parse_factor(alg, factor)?;
            value = alg.mul(&value, &v);
        }
        let coef = if neg { f.neg(1) } else { 1 };
        total = sparse_axpy(&f, &total, coef, &value);
    }
    Ok(total)
}

fn parse_factor(alg: &ArtinAlgebra, factor: &str) -> Result<SparseVec, String> {
    let f = alg.field();
    if factor.is_empty() {
        return Err("empty factor".into());
    }
    if let Some(i) = alg.index_of_label(factor) {
        return Ok(vec![(i as u32, 1)]);
    }
    if let Ok(n) = factor.parse::<i64>() {
        let c = f.from_i64(n);
        return Ok(if c == 0 { Vec::new() } else { vec![(0, c)] });
    }
    if let Some((base, exp)) = factor.split_once('^') {
        let k: u32 = exp
            .parse()
            .map_err(|_| format!("bad exponent in `{factor}`"))?;
        let b = alg
            .index_of_label(base)
            .ok_or_else(|| format!("unknown basis label `{base}`"))?;
        let mut value = alg.unit();
        for _ in 0..k {
            value = alg.mul(&value, &[(b as u32, 1)]);
        }
        return Ok(value);
    }
    Err(format!("unknown basis label `{factor}`"))
}

/// The ideal generated by the listed elements.
pub fn build_ideal(
    alg: &Arc<ArtinAlgebra>,
    name: &str,
    elements: &[String],
) -> Result<Ideal, CliError> {
    let gens = elements
        .iter()
        .enumerate()
        .map(|(i, e)| parse_element(alg, e).map_err(|m| CliError::input(format!("ideals.{name}[{i}]"), m)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::span(alg, &gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e9() -> ArtinAlgebra {
        ArtinAlgebra::from_monomial_quotient(
            PrimeField::default(),
            &["x", "y", "s", "t"],
            &["x^2", "x*y", "y^2", "s^2", "s*t", "t^2"],
        )
        .unwrap()
    }

    #[test]
    fn elements_parse() {
        let a = e9();
        let xs = a.index_of_label("x*s").unwrap() as u32;
        assert_eq!(parse_element(&a, "x * s").unwrap(), vec![(xs, 1)]);
        assert_eq!(parse_element(&a, "s*x").unwrap(), vec![(xs, 1)]);
        assert_eq!(parse_element(&a, "x^2").unwrap(), Vec::new());
        let v = parse_element(&a, "2*x - y + 1").unwrap();
        let (x, y) = (a.index_of_label("x").unwrap() as u32, a.index_of_label("y").unwrap() as u32);
        let mut expect = vec![(0, 1), (x, 2), (y, 32002)];
        expect.sort();
        assert_eq!(v, expect);
        assert!(parse_element(&a, "z").is_err());
        assert!(parse_element(&a, "x+").is_err());
    }

    #[test]
    fn schema_parses() {
        let text = r#"{"field": {"p": 7},
            "algebra": {"kind": "external_tensor", "factors": [
                {"kind": "monomial_quotient", "vars": ["x"], "relations": ["x^2"]},
                {"kind": "monomial_quotient", "vars": ["s"], "relations": ["s^2"]}]},
            "modules": {"C": "regular"}, "ideals": {"I": ["x"]}}"#;
        let input = InputFile::parse(text).unwrap();
        assert_eq!(input.prime(), Some(7));
        let cfg = SessionConfig {
            prime: 7,
            ..Default::default()
        };
        let built = build_algebra(&input.algebra, &cfg).unwrap();
        assert_eq!(built.algebra.dim(), 4);
        assert!(built.factors.is_some());
        assert!(InputFile::parse(r#"{"algebra": {"kind": "nope"}}"#).is_err());
    }
}
