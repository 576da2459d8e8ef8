use thiserror::Error;

/// Everything that can go wrong between reading a table and emitting a report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("missing cell: {0}")]
    MissingCell(String),
    #[error("value {value} of attribute `{attribute}` (object `{object}`) is outside [0, {range}]")]
    OutOfRange {
        object: String,
        attribute: String,
        value: f64,
        range: f64,
    },
    #[error("label `{label}` of attribute `{attribute}` (object `{object}`) is not in its label order")]
    UnknownLabel {
        object: String,
        attribute: String,
        label: String,
    },
    #[error("object id `{0}` appears more than once")]
    DuplicateObjectId(String),
    #[error("cannot parse `{value}` as a number for attribute `{attribute}` (object `{object}`)")]
    InvalidNumber {
        object: String,
        attribute: String,
        value: String,
    },
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("attribute `{0}` has no column in the data")]
    MissingColumn(String),
    #[error("attribute `{0}` is listed in more than one level")]
    OverlappingLevels(String),
    #[error("attribute `{0}` is not assigned to any level")]
    UncoveredAttribute(String),
    #[error("unknown level `{0}`")]
    UnknownLevel(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("partitions are over different universes ({0} vs {1} objects)")]
    UniverseMismatch(usize, usize),
    #[error("no partitions given")]
    NoPartitions,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid proximity matrix: {0}")]
    InvalidMatrix(String),
    #[error("class of attribute `{0}` mixes several labels")]
    AmbiguousCategory(String),
    #[error("attribute `{attribute}` has {classes} classes but the grade scale is {scale}")]
    ScaleTooSmall {
        attribute: String,
        classes: usize,
        scale: u32,
    },
    #[error("every attribute is redundant; no weights can be formed")]
    AllRedundant,
    #[error("invalid attribute spec `{attribute}`: {reason}")]
    InvalidSpec { attribute: String, reason: String },
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("csv: {0}")]
    Csv(String),
}

impl EvalError {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            EvalError::MissingCell(_) => "MissingCell",
            EvalError::OutOfRange { .. } => "OutOfRange",
            EvalError::UnknownLabel { .. } => "UnknownLabel",
            EvalError::DuplicateObjectId(_) => "DuplicateObjectId",
            EvalError::InvalidNumber { .. } => "InvalidNumber",
            EvalError::UnknownAttribute(_) => "UnknownAttribute",
            EvalError::MissingColumn(_) => "MissingColumn",
            EvalError::OverlappingLevels(_) => "OverlappingLevels",
            EvalError::UncoveredAttribute(_) => "UncoveredAttribute",
            EvalError::UnknownLevel(_) => "UnknownLevel",
            EvalError::UnknownObject(_) => "UnknownObject",
            EvalError::UniverseMismatch(..) => "UniverseMismatch",
            EvalError::NoPartitions => "NoPartitions",
            EvalError::InvalidPartition(_) => "InvalidPartition",
            EvalError::InvalidMatrix(_) => "InvalidMatrix",
            EvalError::AmbiguousCategory(_) => "AmbiguousCategory",
            EvalError::ScaleTooSmall { .. } => "ScaleTooSmall",
            EvalError::AllRedundant => "AllRedundant",
            EvalError::InvalidSpec { .. } => "InvalidSpec",
            EvalError::InvalidConfig(_) => "InvalidConfig",
            EvalError::Csv(_) => "Csv",
        }
    }
}

pub type Result<T> = std::result::Result<T, EvalError>;
