use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial has no normal form")]
    ZeroPolynomial,

    #[error("cyclotomic index must be positive")]
    CyclotomicIndex,

    #[error("degree exceeds factorization bound ({span} > {bound})")]
    FactorizationBound { span: i64, bound: i64 },

    #[error("invalid Seifert matrix{}: {reason}", name.as_ref().map(|n| format!(" '{n}'")).unwrap_or_default())]
    InvalidSeifert { name: Option<String>, reason: String },

    #[error("uncertified signature; raise precision ({0})")]
    UncertifiedSignature(String),

    #[error("root isolation failed for factor {0}")]
    RootIsolation(String),

    #[error("presentation/order inconsistency: {0}")]
    OrderInconsistency(String),

    #[error("cover group at k = {0} is infinite")]
    InfiniteCover(u32),

    #[error("enumeration bound exceeded: {0}")]
    EnumerationBound(String),

    #[error("character order {0} is not a prime power")]
    NotPrimePower(u64),

    #[error("character does not factor through H/(t^{0}-1)")]
    CharacterLevel(u32),

    #[error("tensor formula requires coprime dimensions ({0}, {1})")]
    TensorNotCoprime(u32, u32),

    #[error("missing axis data for stage {stage} at level k = {k}")]
    MissingAxis { stage: usize, k: u32 },

    #[error("ribbon mode requires a declared metabolizer family")]
    MissingMetabolizerFamily,

    #[error("declared metabolizer family does not project to a metabolizer at k = {0}")]
    NotAMetabolizer(u32),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("{0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
