use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one evaluated inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// A strict inequality met with equality.
    Boundary,
    Fail,
}

/// Whether an instance decides the verdict or is recorded for information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Asserted,
    Reported,
}

/// Direction of a claim `lhs ⋈ rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Less,
    LessOrEqual,
    Greater,
    GreaterOrEqual,
}

impl Relation {
    /// Status and margin (positive when the claim holds with room).
    pub fn evaluate(self, lhs: f64, rhs: f64) -> (Status, f64) {
        let margin = match self {
            Relation::Less | Relation::LessOrEqual => rhs - lhs,
            Relation::Greater | Relation::GreaterOrEqual => lhs - rhs,
        };
        let tie = margin.abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(1.0);
        let status = match self {
            _ if margin.is_nan() => Status::Fail,
            Relation::Less | Relation::Greater if tie => Status::Boundary,
            _ if margin > 0.0 || tie => Status::Pass,
            _ => Status::Fail,
        };
        (status, margin)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub params: Value,
    pub lhs: f64,
    pub rhs: f64,
    pub status: Status,
    pub margin: f64,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub asserted: usize,
    pub passed: usize,
    pub boundary: usize,
    pub failed: usize,
    /// Smallest margin over asserted instances.
    pub min_margin: Option<f64>,
    /// No asserted instance failed.
    pub ok: bool,
    /// Values recorded alongside the instances.
    pub observations: Value,
    pub notes: Vec<String>,
}

/// Machine-readable result of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub inputs: Value,
    pub claim: String,
    pub instances: Vec<Instance>,
    pub summary: Summary,
}

impl CheckReport {
    pub fn new(check: &str, inputs: Value, claim: impl Into<String>) -> Self {
        Self {
            check: check.to_string(),
            inputs,
            claim: claim.into(),
            instances: Vec::new(),
            summary: Summary {
                asserted: 0,
                passed: 0,
                boundary: 0,
                failed: 0,
                min_margin: None,
                ok: true,
                observations: Value::Object(Default::default()),
                notes: Vec::new(),
            },
        }
    }

    pub fn assert(&mut self, params: Value, lhs: f64, relation: Relation, rhs: f64) -> Status {
        self.push(params, lhs, relation, rhs, Role::Asserted)
    }

    pub fn record(&mut self, params: Value, lhs: f64, relation: Relation, rhs: f64) -> Status {
        self.push(params, lhs, relation, rhs, Role::Reported)
    }

    fn push(&mut self, params: Value, lhs: f64, relation: Relation, rhs: f64, role: Role) -> Status {
        let (status, margin) = relation.evaluate(lhs, rhs);
        self.instances.push(Instance {
            params,
            lhs,
            rhs,
            status,
            margin,
            role,
        });
        status
    }

    pub fn observe(&mut self, key: &str, value: impl Serialize) {
        if let Value::Object(map) = &mut self.summary.observations {
            map.insert(
                key.to_string(),
                serde_json::to_value(value).unwrap_or(Value::Null),
            );
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.summary.notes.push(text.into());
    }

    /// Recomputes the summary counts from the instances.
    pub fn finish(mut self) -> Self {
        let asserted: Vec<&Instance> = self
            .instances
            .iter()
            .filter(|i| i.role == Role::Asserted)
            .collect();
        let s = &mut self.summary;
        s.asserted = asserted.len();
        s.passed = asserted.iter().filter(|i| i.status == Status::Pass).count();
        s.boundary = asserted.iter().filter(|i| i.status == Status::Boundary).count();
        s.failed = asserted.iter().filter(|i| i.status == Status::Fail).count();
        s.min_margin = asserted.iter().map(|i| i.margin).reduce(f64::min);
        s.ok = s.failed == 0;
        self
    }

    pub fn passed(&self) -> bool {
        self.summary.ok
    }

    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.instances
            .iter()
            .filter(|i| i.role == Role::Asserted && i.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
