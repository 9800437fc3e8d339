//! Structured verification reports with canonical JSON output.
//!
//! Records are kept sorted so that serialized reports are byte-identical
//! across runs and thread counts. JSON is written by hand: keys sorted,
//! integers only, no floats anywhere.

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Record {
    pub check: String,
    pub instance: String,
    pub ok: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub scope: String,
    records: Vec<Record>,
}

impl Report {
    pub fn new(scope: impl Into<String>) -> Self {
        Report { scope: scope.into(), records: Vec::new() }
    }

    pub fn pass(&mut self, check: impl Into<String>, instance: impl Into<String>) {
        self.records.push(Record {
            check: check.into(),
            instance: instance.into(),
            ok: true,
            witness: None,
        });
    }

    pub fn fail(
        &mut self,
        check: impl Into<String>,
        instance: impl std::fmt::Display,
        witness: impl Into<String>,
    ) {
        self.records.push(Record {
            check: check.into(),
            instance: instance.to_string(),
            ok: false,
            witness: Some(witness.into()),
        });
    }

    /// Adds a summary pass record when no failure has been recorded yet.
    pub fn pass_if_clean(&mut self, check: impl Into<String>, instance: impl Into<String>) {
        if self.passed() {
            self.pass(check, instance);
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.ok)
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Record> {
        self.failures().next()
    }

    fn sorted_records(&self) -> Vec<&Record> {
        let mut rs: Vec<&Record> = self.records.iter().collect();
        rs.sort();
        rs
    }

    pub fn to_canonical_json(&self) -> String {
        let mut out = String::from("{");
        out.push_str(&format!("\"records\":["));
        let rs = self.sorted_records();
        for (i, r) in rs.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('{');
            out.push_str(&format!("\"check\":{}", json_string(&r.check)));
            out.push_str(&format!(",\"instance\":{}", json_string(&r.instance)));
            out.push_str(&format!(",\"ok\":{}", r.ok));
            match &r.witness {
                Some(w) => out.push_str(&format!(",\"witness\":{}", json_string(w))),
                None => out.push_str(",\"witness\":null"),
            }
            out.push('}');
        }
        out.push(']');
        let failed = self.records.iter().filter(|r| !r.ok).count();
        out.push_str(&format!(
            ",\"scope\":{},\"summary\":{{\"failed\":{},\"passed\":{}}}",
            json_string(&self.scope),
            failed,
            self.records.len() - failed
        ));
        out.push('}');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in self.sorted_records() {
            let status = if r.ok { "ok  " } else { "FAIL" };
            out.push_str(&format!("[{status}] {}::{} {}", self.scope, r.check, r.instance));
            if let Some(w) = &r.witness {
                out.push_str(&format!("  witness: {w}"));
            }
            out.push('\n');
        }
        let failed = self.records.iter().filter(|r| !r.ok).count();
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            self.scope,
            self.records.len(),
            failed
        ));
        out
    }
}

pub fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_json_is_sorted_and_stable() {
        let mut a = Report::new("t");
        a.pass("z", "1");
        a.fail("a", "2", "w");
        let mut b = Report::new("t");
        b.fail("a", "2", "w");
        b.pass("z", "1");
        assert_eq!(a.to_canonical_json(), b.to_canonical_json());
        assert!(a.to_canonical_json().contains("\"failed\":1"));
    }
}
