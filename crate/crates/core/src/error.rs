use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("line {line}: undeclared state `{name}`")]
    UndeclaredState { line: usize, name: String },

    #[error("line {line}: undeclared {kind} symbol `{name}`")]
    UndeclaredSymbol { line: usize, kind: &'static str, name: String },

    #[error("missing `{0}` declaration")]
    MissingDeclaration(&'static str),

    #[error("line {line}: choose branches may neither push nor pop")]
    ChooseStackEffect { line: usize },

    #[error("token `{0}` is not in the tape alphabet")]
    UnknownToken(String),

    #[error("token `{0}` is reserved")]
    ReservedToken(String),

    #[error("no rule matches configuration {0}")]
    NoRule(String),

    #[error("no follow rule matches suspended {under} and terminator {top}")]
    NoFollowRule { under: String, top: String },

    #[error("move from {0} would leave the tape")]
    HeadOutOfBounds(String),

    #[error("configuration {0} does not perform the requested operation")]
    WrongAction(String),

    #[error("configuration index {index} out of range (n_conf = {capacity})")]
    IndexOutOfRange { index: usize, capacity: usize },

    #[error("set capacities differ ({0} vs {1})")]
    CapacityMismatch(usize, usize),

    #[error("illegal table transition at {index}: {from} -> {to}")]
    IllegalTransition { index: usize, from: &'static str, to: &'static str },

    #[error("engine {engine} requires a deterministic automaton")]
    EngineMismatch { engine: &'static str },

    #[error("accept at {0} without empty stack and all heads on the right endmarker")]
    AcceptInvalid(String),

    #[error("grammar line {line}: {msg}")]
    GrammarSyntax { line: usize, msg: String },

    #[error("grammar line {line}: undeclared nonterminal `{name}`")]
    UndeclaredNonterminal { line: usize, name: String },

    #[error("grammar has no productions")]
    EmptyGrammar,

    #[error("grammar generates nothing")]
    GeneratesNothing,

    #[error("terminal `{0}` is not in the grammar")]
    UnknownTerminal(String),

    #[error("enumeration length {0} exceeds the guard of {1}")]
    LengthGuard(usize, usize),

    #[error("unknown zoo entry `{0}`")]
    UnknownZoo(String),

    #[error("unknown benchmark family `{0}`")]
    UnknownFamily(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
