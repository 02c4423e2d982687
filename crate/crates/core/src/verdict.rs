use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Assertions must hold; a failing one fails the run. Classifications
/// answer a yes/no question about the instance and never fail the run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    #[default]
    Assertion,
    Classification,
}

impl Role {
    fn is_assertion(&self) -> bool {
        *self == Role::Assertion
    }
}

/// One named verdict. `detail` locates the first counterexample on failure
/// or gives the reason for skipping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Role::is_assertion")]
    pub role: Role,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            detail: None,
            role: Role::Assertion,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            detail: Some(detail.into()),
            role: Role::Assertion,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skipped,
            detail: Some(reason.into()),
            role: Role::Assertion,
        }
    }

    /// Pass when `mismatch` is `None`, otherwise fail with it as detail.
    pub fn from_mismatch(name: impl Into<String>, mismatch: Option<String>) -> Self {
        match mismatch {
            None => Check::pass(name),
            Some(d) => Check::fail(name, d),
        }
    }

    pub fn classification(mut self) -> Self {
        self.role = Role::Classification;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// A failed assertion. Failed classifications do not count.
    pub fn is_failure(&self) -> bool {
        self.failed() && self.role == Role::Assertion
    }
}
