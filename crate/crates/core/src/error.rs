use thiserror::Error;

use crate::domain::FundamentalPolyhedron;

/// Which precondition of the isometric-sphere / bisector comparison failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IncomparableReason {
    /// `c = 0`: there is no isometric sphere.
    NoIsometricSphere,
    /// `|a|² + |c|² = 1`: the bisector is a vertical plane, not a sphere.
    BisectorIsPlane,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("scalars over different fields: sqrt(-{0}) vs sqrt(-{1})")]
    DiscriminantMismatch(u64, u64),
    #[error("cannot mix exact and floating scalars")]
    ScalarKindMismatch,
    #[error("elements act on different models")]
    ModelMismatch,
    #[error("matrix is not unimodular (ad - bc != 1)")]
    NotUnimodular,
    #[error("H2 elements must have real entries")]
    NotReal,
    #[error("point height must be strictly positive, got {0}")]
    NonPositiveHeight(f64),
    #[error("element fixes the center point, so its bisector is undefined")]
    CenterStabilized,
    #[error("element has c = 0 and therefore no isometric sphere")]
    NoIsometricSphere,
    #[error("isometric sphere and bisector cannot be compared: {0:?}")]
    IncomparableSurfaces(IncomparableReason),
    #[error("image of a geodesic surface is degenerate")]
    DegenerateImage,
    #[error("candidate set exceeded the cap of {cap} elements")]
    ExplosionGuard { cap: usize },
    #[error("cusp generator {index} does not fix infinity")]
    NotACuspGroup { index: usize },
    #[error("stabilizer element {index} does not fix the center point")]
    NotStabilizing { index: usize },
    #[error("norm bound {bound} reached before the face set stabilized")]
    BoundExhausted { bound: f64, partial: Box<FundamentalPolyhedron> },
    #[error("enumerated element {element} fixes the center but is not in the declared stabilizer")]
    CenterNotFree { element: String },
    #[error("face {face} has no pairing onto another face")]
    UnpairedFace { face: usize },
    #[error("the polyhedron is not a DF domain")]
    NotDF,
    #[error("side pairing {element} does not satisfy a = d")]
    NotReflective { element: String },
    #[error("side pairing {element} has lower-left entry neither real nor purely imaginary")]
    BadLowerLeft { element: String },
    #[error("discriminant {0} is excluded from this construction")]
    ExcludedDiscriminant(u64),
    #[error("{0} is not a positive squarefree integer")]
    NotSquarefree(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DiscriminantMismatch(..) => "discriminant_mismatch",
            Error::ScalarKindMismatch => "scalar_kind_mismatch",
            Error::ModelMismatch => "model_mismatch",
            Error::NotUnimodular => "not_unimodular",
            Error::NotReal => "not_real",
            Error::NonPositiveHeight(_) => "non_positive_height",
            Error::CenterStabilized => "center_stabilized",
            Error::NoIsometricSphere => "no_isometric_sphere",
            Error::IncomparableSurfaces(_) => "incomparable_surfaces",
            Error::DegenerateImage => "degenerate_image",
            Error::ExplosionGuard { .. } => "explosion_guard",
            Error::NotACuspGroup { .. } => "not_a_cusp_group",
            Error::NotStabilizing { .. } => "not_stabilizing",
            Error::BoundExhausted { .. } => "bound_exhausted",
            Error::CenterNotFree { .. } => "center_not_free",
            Error::UnpairedFace { .. } => "unpaired_face",
            Error::NotDF => "not_df",
            Error::NotReflective { .. } => "not_reflective",
            Error::BadLowerLeft { .. } => "bad_lower_left",
            Error::ExcludedDiscriminant(_) => "excluded_discriminant",
            Error::NotSquarefree(_) => "not_squarefree",
            Error::Parse(_) => "parse",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
