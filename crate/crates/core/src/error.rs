use thiserror::Error;

/// Errors produced by the surface, curve and algebra layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polygon must have a positive even number of sides, got {0}")]
    OddPolygon(usize),
    #[error("side {side} out of range for a {n_sides}-gon")]
    SideOutOfRange { side: usize, n_sides: usize },
    #[error("side {0} is glued to itself")]
    SelfGlued(usize),
    #[error("side {0} is glued more than once")]
    DuplicateGlue(usize),
    #[error("side {0} is not glued to anything")]
    UnpairedSide(usize),
    #[error("Euler characteristic {0} is odd: the gluing is not orientation-compatible")]
    OddEulerCharacteristic(i64),
    #[error("operation requires genus >= {required}, surface has genus {genus}")]
    GenusTooSmall { genus: usize, required: usize },

    #[error("boundary position t = {0} must lie strictly between 0 and 1")]
    PositionOutOfRange(String),
    #[error("curve must have at least one chord")]
    EmptyCurve,
    #[error("curve has an odd number of points ({0})")]
    OddPointCount(usize),
    #[error("curve does not close up: gluing step {0} lands on the wrong point")]
    NotClosed(usize),
    #[error("curve is not simple: chords {0} and {1} {2}")]
    NotSimple(usize, usize, &'static str),
    #[error("curves must be pairwise disjoint: {0} crossings found")]
    CrossingCurves(usize),
    #[error("curves share the boundary point {0}")]
    CoincidentPoints(String),
    #[error("arrangement has three chords meeting ambiguously")]
    AmbiguousArrangement,
    #[error("bigon removal failed to decrease the crossing count ({0})")]
    BigonRemovalStalled(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("shift {shift} does not preserve the gluing of the {n_sides}-gon")]
    NotARotation { shift: usize, n_sides: usize },
    #[error("no rotation of order {0} preserves this gluing")]
    NoRotationOfOrder(usize),
    #[error("the identity rotation has no nontrivial powers")]
    IdentityRotation,

    #[error("order {order} does not divide {n_sides}")]
    OrderDoesNotDivide { order: usize, n_sides: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no same-half glued pair for this rotation axis")]
    NoSameHalfPair,
    #[error("every same-half glued pair is adjacent")]
    AdjacentOnly,
    #[error("no power of the rotation certifies the curve: {0}")]
    NoCertifiedPower(String),

    #[error("alternating form is not unimodular (pivot {0})")]
    NotUnimodular(i64),
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("source pairing {source_pairing} differs from target pairing {target_pairing}")]
    PairingMismatch { source_pairing: i64, target_pairing: i64 },
    #[error("source and target configurations are not equivalent: {0}")]
    ConfigurationMismatch(String),
    #[error("vectors do not span a saturated sublattice")]
    NotSaturated,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("duplicate lantern label {0}")]
    DuplicateLabel(String),
    #[error("missing mapping rule for source curve {0}")]
    MissingRule(String),
    #[error("conflicting mapping rules for map {map} on curve {source_curve}")]
    ConflictingRules { map: String, source_curve: String },
    #[error("rewriting rules are cyclic at curve {0}")]
    CyclicRules(String),
    #[error("powers must be nonzero")]
    ZeroPower,
    #[error("label {0} has no assigned value")]
    Unassigned(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
