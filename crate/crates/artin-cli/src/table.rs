//! Tabular output: CSV with 6-significant-digit rendering, JSON with
//! full-precision numbers that round-trip bit-exactly.

use serde_json::{json, Map, Number, Value as Json};

/// One cell of a table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Int(u64),
    Float(f64),
}

/// A fixed-schema table: column names plus rows.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// CSV with a header row, comma separators, LF endings; floats are
    /// rendered with 6 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    out.push(',');
                }
                first = false;
                match cell {
                    Value::Int(v) => out.push_str(&v.to_string()),
                    Value::Float(v) => out.push_str(&format_sig(*v, 6)),
                }
            }
            out.push('\n');
        }
        out
    }

    /// `{"command": .., "params": .., "rows": [..]}` with every float
    /// serialized at full precision (shortest representation that parses
    /// back to the identical bits).
    pub fn to_json(&self, command: &str, params: Json) -> String {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let v = match cell {
                        Value::Int(v) => json!(v),
                        Value::Float(v) => Json::Number(
                            Number::from_f64(*v).expect("finite table values"),
                        ),
                    };
                    obj.insert((*name).to_string(), v);
                }
                Json::Object(obj)
            })
            .collect();
        let doc = json!({
            "command": command,
            "params": params,
            "rows": rows,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("serializable table");
        text.push('\n');
        text
    }
}

/// %.{sig}g-style rendering: fixed notation in a central exponent window,
/// scientific outside it, trailing zeros trimmed.
pub fn format_sig(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    let sig = sig.max(1) as i32;
    let mut s = if exp >= -4 && exp < sig {
        let decimals = (sig - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, v)
    } else {
        format!("{:.*e}", (sig - 1) as usize, v)
    };
    // trim trailing zeros in the mantissa
    if s.contains('.') {
        let (mantissa, suffix) = match s.find('e') {
            Some(i) => (s[..i].to_string(), s[i..].to_string()),
            None => (s.clone(), String::new()),
        };
        let trimmed = mantissa.trim_end_matches('0').trim_end_matches('.');
        s = format!("{trimmed}{suffix}");
    }
    s
}
