//! JSON dumps of truncated modules.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use super::{verma_engine, Bounds, HWModule, HwParams, ModuleKind, Quotient, WeightSpace};
use crate::error::{Error, Result};
use crate::exact::scalar;
use crate::lie::SimpleLieAlgebra;
use crate::pbw::Monomial;

impl HWModule {
    /// Deterministic dump: parameters, bounds and per-weight bases, with
    /// quotient data as sparse triplets `[verma index, pivot position, "p/q"]`.
    pub fn to_json(&self) -> Value {
        let spaces: Vec<Value> = self
            .spaces
            .iter()
            .map(|((d, drop), sp)| {
                let mut o = json!({
                    "depth": d,
                    "drop": drop,
                    "basis": sp.basis.iter().map(|m| m.display(&self.alg)).collect::<Vec<_>>(),
                });
                if let Some(q) = &sp.quotient {
                    let trip: Vec<Value> = q
                        .reps
                        .iter()
                        .enumerate()
                        .flat_map(|(j, r)| r.iter().map(move |(pos, c)| json!([j, pos, scalar::fmt(c)])))
                        .collect();
                    o["pivots"] = json!(q.pivots);
                    o["projection"] = Value::Array(trip);
                }
                o
            })
            .collect();
        json!({
            "algebra": self.alg.name,
            "params": serde_json::to_value(&self.params).expect("parameters serialize"),
            "bounds": serde_json::to_value(self.bounds).expect("bounds serialize"),
            "kind": serde_json::to_value(self.kind).expect("kind serializes"),
            "spaces": spaces,
        })
    }

    pub fn from_json(alg: Arc<SimpleLieAlgebra>, v: &Value) -> Result<HWModule> {
        let bad = |m: &str| Error::BadInput(format!("module dump: {m}"));
        let params: HwParams = serde_json::from_value(v["params"].clone()).map_err(|e| bad(&e.to_string()))?;
        let bounds: Bounds = serde_json::from_value(v["bounds"].clone()).map_err(|e| bad(&e.to_string()))?;
        let kind: ModuleKind = serde_json::from_value(v["kind"].clone()).map_err(|e| bad(&e.to_string()))?;
        let mut spaces = BTreeMap::new();
        for s in v["spaces"].as_array().ok_or_else(|| bad("missing spaces"))? {
            let d = s["depth"].as_u64().ok_or_else(|| bad("depth"))? as u32;
            let drop: Vec<i64> = serde_json::from_value(s["drop"].clone()).map_err(|e| bad(&e.to_string()))?;
            let names: Vec<String> = serde_json::from_value(s["basis"].clone()).map_err(|e| bad(&e.to_string()))?;
            let basis = names.iter().map(|n| Monomial::parse(&alg, n)).collect::<Result<Vec<_>>>()?;
            let quotient = match kind {
                ModuleKind::Verma => None,
                ModuleKind::IrreducibleQuotient => {
                    let pivots: Vec<usize> = serde_json::from_value(s["pivots"].clone()).map_err(|e| bad(&e.to_string()))?;
                    let mut reps = vec![Vec::new(); basis.len()];
                    for t in s["projection"].as_array().ok_or_else(|| bad("projection"))? {
                        let j = t[0].as_u64().ok_or_else(|| bad("triplet"))? as usize;
                        let pos = t[1].as_u64().ok_or_else(|| bad("triplet"))? as usize;
                        let c = scalar::parse(t[2].as_str().ok_or_else(|| bad("triplet"))?)?;
                        reps.get_mut(j).ok_or_else(|| bad("triplet index"))?.push((pos, c));
                    }
                    Some(Quotient { pivots, reps })
                }
            };
            spaces.insert((d, drop), WeightSpace { basis, quotient });
        }
        let engine = Arc::new(verma_engine(&alg, &params));
        Ok(HWModule::assemble(alg, params, bounds, kind, spaces, engine, Arc::new(Mutex::new(HashMap::new()))))
    }

    /// Equality of the stored data (parameters, bounds, kind and weight spaces).
    pub fn same_data(&self, other: &HWModule) -> bool {
        self.params == other.params && self.bounds == other.bounds && self.kind == other.kind && self.spaces == other.spaces
    }
}
