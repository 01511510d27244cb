use std::borrow::Borrow;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Code of the synthetic start activity.
pub const SOURCE_CODE: &str = "α";
/// Code of the synthetic end activity.
pub const SINK_CODE: &str = "ω";
/// ASCII alias accepted for [`SOURCE_CODE`] in schedule tables.
pub const SOURCE_ALIAS: &str = "START";
/// ASCII alias accepted for [`SINK_CODE`] in schedule tables.
pub const SINK_ALIAS: &str = "END";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidId {
    #[error("activity code is empty")]
    Empty,
    #[error("activity code {0:?} contains whitespace")]
    Whitespace(String),
    #[error("activity code {0:?} contains a reserved character (',' or ';')")]
    Reserved(String),
    #[error("activity code {0:?} is reserved")]
    ReservedWord(String),
}

/// Short textual code naming one activity (`A`, `f_1`, `α`, ...).
///
/// Ordering is plain string ordering, which is the tie-break used for every
/// set-valued output in the crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ActivityId(String);

impl ActivityId {
    pub fn new(code: impl Into<String>) -> Result<Self, InvalidId> {
        let code = code.into();
        if code.is_empty() {
            return Err(InvalidId::Empty);
        }
        if code.chars().any(char::is_whitespace) {
            return Err(InvalidId::Whitespace(code));
        }
        if code.contains([',', ';']) {
            return Err(InvalidId::Reserved(code));
        }
        // "-" marks an empty predecessor list and '#' opens a comment line.
        if code == "-" || code.starts_with('#') {
            return Err(InvalidId::ReservedWord(code));
        }
        Ok(ActivityId(code))
    }

    /// Like [`ActivityId::new`], but maps the ASCII aliases `START`/`END`
    /// onto `α`/`ω`.
    pub fn parse_aliased(code: &str) -> Result<Self, InvalidId> {
        match code {
            SOURCE_ALIAS => Ok(Self::source()),
            SINK_ALIAS => Ok(Self::sink()),
            other => Self::new(other),
        }
    }

    pub fn source() -> Self {
        ActivityId(SOURCE_CODE.to_owned())
    }

    pub fn sink() -> Self {
        ActivityId(SINK_CODE.to_owned())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_source(&self) -> bool {
        self.0 == SOURCE_CODE
    }

    pub fn is_sink(&self) -> bool {
        self.0 == SINK_CODE
    }
}

impl fmt::Display for ActivityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for ActivityId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for ActivityId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for ActivityId {
    type Error = InvalidId;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        ActivityId::new(value)
    }
}

impl TryFrom<&str> for ActivityId {
    type Error = InvalidId;

    fn try_from(value: &str) -> Result<Self, Self::Error> {
        ActivityId::new(value)
    }
}

impl From<ActivityId> for String {
    fn from(id: ActivityId) -> Self {
        id.0
    }
}

impl PartialEq<str> for ActivityId {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for ActivityId {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}
