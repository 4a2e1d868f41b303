use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("trivial cycle: a fixed point has no over-rotation pair")]
    TrivialCycle,

    #[error("invalid over-twist specification: {0}")]
    InvalidOvertwist(String),

    #[error("spatial index {index} out of range 1..={period}")]
    IndexOutOfRange { index: usize, period: usize },

    #[error("point {0} outside the unit interval")]
    OutsideDomain(String),

    #[error("invalid piecewise map: {0}")]
    InvalidMap(String),

    #[error("parameters outside the rectangle 1/2 <= alpha <= 1, 0 <= beta <= 1/2: ({alpha}, {beta})")]
    OutsideParameterSpace { alpha: String, beta: String },

    #[error("insufficient length to compare itineraries")]
    InsufficientLength,

    #[error("itinerary infeasible: {0}")]
    ItineraryInfeasible(String),

    #[error("graph has no cycle")]
    NoCycle,

    #[error("invalid lift: {0}")]
    InvalidLift(String),

    #[error("lift is not monotone")]
    NotMonotone,

    #[error("invalid rotation number p/q = {p}/{q}: need gcd(p,q) = 1 and 0 < p/q < 1/2")]
    InvalidFraction { p: u64, q: u64 },

    #[error("point below tract: psi < {p}/{q}")]
    BelowTract { p: u64, q: u64 },

    #[error("psi at the point is {found}, not {p}/{q}")]
    NotOnTract { p: u64, q: u64, found: String },

    #[error("empty level set")]
    EmptyLevelSet,

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable snake-case tag for machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidPattern(_) => "invalid_pattern",
            Error::TrivialCycle => "trivial_cycle",
            Error::InvalidOvertwist(_) => "invalid_overtwist",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::OutsideDomain(_) => "outside_domain",
            Error::InvalidMap(_) => "invalid_map",
            Error::OutsideParameterSpace { .. } => "outside_parameter_space",
            Error::InsufficientLength => "insufficient_length",
            Error::ItineraryInfeasible(_) => "itinerary_infeasible",
            Error::NoCycle => "no_cycle",
            Error::InvalidLift(_) => "invalid_lift",
            Error::NotMonotone => "not_monotone",
            Error::InvalidFraction { .. } => "invalid_fraction",
            Error::BelowTract { .. } => "below_tract",
            Error::NotOnTract { .. } => "not_on_tract",
            Error::EmptyLevelSet => "empty_level_set",
            Error::Config(_) => "config",
        }
    }
}
