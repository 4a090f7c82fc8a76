use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed graph document: {0}")]
    MalformedDocument(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{edge}` references undeclared vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("invalid id `{0}`: ids must be non-empty and must not contain whitespace, `(`, `)`, `*`, `+` or `·`")]
    InvalidId(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("cycle is not a cycle of this graph")]
    CycleNotInGraph,
    #[error("vertex set is not hereditary")]
    NotHereditary,
    #[error("entry path set is infinite; the restriction graph is not finitely representable")]
    InfiniteEntryPaths,
    #[error("vertex `{0}` is not in the saturated closure")]
    OutsideClosure(String),
    #[error("vertex `{0}` is a sink")]
    Sink(String),
    #[error("malformed term: {0}")]
    MalformedTerm(String),
    #[error("elements belong to different graphs")]
    MixedGraphs,
    #[error("cannot parse element: {0}")]
    ElementSyntax(String),
    #[error("zero element has no corner reduction")]
    ZeroElement,
    #[error("degree must be nonzero")]
    ZeroDegree,
    #[error("class is not finite (infinite closure or entry paths)")]
    InfiniteClass,
    #[error("length bound {given} is too small; the emitted basis needs {needed}")]
    BoundTooSmall { given: usize, needed: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
