use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::fields::{FieldDescriptor, FieldElement};
use crate::ring::Ring;

use super::{LieError, ResLieAlgebra, Vector};

impl ResLieAlgebra {
    /// `{"field":..,"dim":n,"labels":[..],"bracket":[[i,j,[..]],..],"pmap":[[i,[..]],..]}`
    /// listing only non-zero brackets with `i < j` and non-zero `p`-map images.
    pub fn to_json(&self) -> Json {
        let enc = |v: &Vector| Json::Array(v.iter().map(|c| c.to_json()).collect());
        let mut bracket = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let v = &self.bracket_constants()[i][j];
                if v.iter().any(|c| !c.is_zero()) {
                    bracket.push(json!([i, j, enc(v)]));
                }
            }
        }
        let pmap: Vec<Json> = self
            .pmap_constants()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.iter().any(|c| !c.is_zero()))
            .map(|(i, v)| json!([i, enc(v)]))
            .collect();
        json!({
            "field": self.field().to_json(),
            "dim": self.dim(),
            "labels": self.labels(),
            "bracket": bracket,
            "pmap": pmap,
        })
    }

    /// Inverse of [`ResLieAlgebra::to_json`]; the axioms are re-checked.
    pub fn from_json(v: &Json) -> Result<Arc<Self>, LieError> {
        let bad = |m: &str| LieError::Json(m.to_string());
        let field = FieldDescriptor::from_json(v.get("field").ok_or_else(|| bad("missing field"))?)
            .map_err(|e| LieError::Json(e.to_string()))?;
        let n = v.get("dim").and_then(Json::as_u64).ok_or_else(|| bad("missing dim"))? as usize;
        let labels: Vec<String> = match v.get("labels") {
            Some(Json::Array(a)) => a
                .iter()
                .map(|x| x.as_str().map(String::from).ok_or_else(|| bad("label must be a string")))
                .collect::<Result<_, _>>()?,
            _ => (0..n).map(|i| format!("e{i}")).collect(),
        };
        if labels.len() != n {
            return Err(bad("label count differs from dim"));
        }
        let dec = |x: &Json| -> Result<Vector, LieError> {
            let arr = x.as_array().ok_or_else(|| bad("coefficient list expected"))?;
            if arr.len() != n {
                return Err(bad("coefficient list has the wrong length"));
            }
            arr.iter()
                .map(|c| FieldElement::from_json(&field, c).map_err(|e| LieError::Json(e.to_string())))
                .collect()
        };
        let index = |x: &Json| -> Result<usize, LieError> {
            let i = x.as_u64().ok_or_else(|| bad("index expected"))? as usize;
            if i >= n {
                return Err(bad("index out of range"));
            }
            Ok(i)
        };
        let zero = vec![field.zero(); n];
        let mut bracket = vec![vec![zero.clone(); n]; n];
        for e in v.get("bracket").and_then(Json::as_array).ok_or_else(|| bad("missing bracket"))? {
            let t = e.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("bracket entry is [i,j,coeffs]"))?;
            let (i, j) = (index(&t[0])?, index(&t[1])?);
            if i == j {
                return Err(bad("bracket entry with i = j"));
            }
            let c = dec(&t[2])?;
            bracket[j][i] = c.iter().map(|x| x.neg()).collect();
            bracket[i][j] = c;
        }
        let mut pmap = vec![zero; n];
        for e in v.get("pmap").and_then(Json::as_array).ok_or_else(|| bad("missing pmap"))? {
            let t = e.as_array().filter(|t| t.len() == 2).ok_or_else(|| bad("pmap entry is [i,coeffs]"))?;
            pmap[index(&t[0])?] = dec(&t[1])?;
        }
        ResLieAlgebra::new(field, labels, bracket, pmap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reslie::{standard_algebra, StandardAlgebra};

    #[test]
    fn round_trip() {
        for f in [FieldDescriptor::prime(3).unwrap(), FieldDescriptor::extension(2, 2).unwrap()] {
            let g = standard_algebra(&StandardAlgebra::Gl(2), &f).unwrap();
            let back = ResLieAlgebra::from_json(&g.to_json()).unwrap();
            assert_eq!(*back, *g);
            assert_eq!(back.labels(), g.labels());
        }
    }

    #[test]
    fn rejects_broken_constants() {
        let f = FieldDescriptor::prime(3).unwrap();
        let g = standard_algebra(&StandardAlgebra::Sl(2), &f).unwrap();
        let mut j = g.to_json();
        j["pmap"] = json!([[1, [1, 0, 0]]]);
        assert!(matches!(ResLieAlgebra::from_json(&j), Err(LieError::AxiomViolation(_))));
    }
}
