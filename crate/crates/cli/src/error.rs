use rademacher::analytic::AnalyticError;
use rademacher::group::GroupError;
use rademacher::linking::LinkingError;
use rademacher::symbols::SymbolError;
use serde_json::json;

/// Error kinds and their process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Usage,
    Parse,
    InvalidParams,
    Domain,
    NotAGroupElement,
    Numeric,
    VerificationFailed,
    Internal,
    Io,
}

impl Kind {
    pub fn exit_code(self) -> u8 {
        match self {
            Kind::Usage => 2,
            Kind::Parse => 3,
            Kind::InvalidParams => 4,
            Kind::Domain => 5,
            Kind::NotAGroupElement => 6,
            Kind::Numeric => 7,
            Kind::VerificationFailed => 8,
            Kind::Internal => 9,
            Kind::Io => 10,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Usage => "usage",
            Kind::Parse => "parse",
            Kind::InvalidParams => "invalid_params",
            Kind::Domain => "domain",
            Kind::NotAGroupElement => "not_a_group_element",
            Kind::Numeric => "numeric",
            Kind::VerificationFailed => "verification_failed",
            Kind::Internal => "internal",
            Kind::Io => "io",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: Kind, message: impl Into<String>) -> CliError {
        CliError {
            kind,
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "error": {
                "kind": self.kind.name(),
                "message": self.message,
                "exit_code": self.kind.exit_code(),
            }
        })
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        let kind = match &e {
            GroupError::InvalidParams(_) => Kind::InvalidParams,
            GroupError::Domain(_) => Kind::Domain,
            GroupError::NotAGroupElement(_) => Kind::NotAGroupElement,
            GroupError::Parse { .. } => Kind::Parse,
        };
        CliError::new(kind, e.to_string())
    }
}

impl From<SymbolError> for CliError {
    fn from(e: SymbolError) -> Self {
        match e {
            SymbolError::Domain(m) => CliError::new(Kind::Domain, m),
            SymbolError::Internal(m) => CliError::new(Kind::Internal, m),
            SymbolError::Group(g) => g.into(),
        }
    }
}

impl From<LinkingError> for CliError {
    fn from(e: LinkingError) -> Self {
        match e {
            LinkingError::Symbol(s) => s.into(),
            LinkingError::Group(g) => g.into(),
            other => CliError::new(Kind::Domain, other.to_string()),
        }
    }
}

impl From<AnalyticError> for CliError {
    fn from(e: AnalyticError) -> Self {
        match e {
            AnalyticError::Domain(m) => CliError::new(Kind::Domain, m),
            AnalyticError::Numeric(m) => CliError::new(Kind::Numeric, m),
            AnalyticError::Internal(m) => CliError::new(Kind::Internal, m),
            AnalyticError::Io(m) => CliError::new(Kind::Io, m),
            AnalyticError::Group(g) => g.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(Kind::Io, e.to_string())
    }
}
