//! Source positions and the diagnostics every phase reports.

use std::fmt;
use std::sync::Arc;

/// A region of a source file. Lines and columns are 1-based; columns count
/// characters, offsets count bytes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: Arc<str>,
    pub start: usize,
    pub end: usize,
    pub line: u32,
    pub col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Code {
    ParseError,
    UnboundVariable,
    DuplicateDefinition,
    /// The type (or kind) does not have the former the rule needs.
    HeadMismatch,
    NotSynthesizable,
    ErasedVarEscapes,
    IntersectionErasureMismatch,
    KleeneScope,
    BetaUnequal,
    DeltaPremise,
    RhoNoMatch,
    ConversionFailed,
    KindMismatch,
    FuelExhausted,
    /// A `#fail` directive whose term was accepted.
    UnexpectedSuccess,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::ParseError => "ParseError",
            Code::UnboundVariable => "UnboundVariable",
            Code::DuplicateDefinition => "DuplicateDefinition",
            Code::HeadMismatch => "HeadMismatch",
            Code::NotSynthesizable => "NotSynthesizable",
            Code::ErasedVarEscapes => "ErasedVarEscapes",
            Code::IntersectionErasureMismatch => "IntersectionErasureMismatch",
            Code::KleeneScope => "KleeneScope",
            Code::BetaUnequal => "BetaUnequal",
            Code::DeltaPremise => "DeltaPremise",
            Code::RhoNoMatch => "RhoNoMatch",
            Code::ConversionFailed => "ConversionFailed",
            Code::KindMismatch => "KindMismatch",
            Code::FuelExhausted => "FuelExhausted",
            Code::UnexpectedSuccess => "UnexpectedSuccess",
        }
    }

    /// Warnings are reported but never reject a declaration.
    pub fn is_warning(self) -> bool {
        self == Code::RhoNoMatch
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How much of the budget a failed judgment had consumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuelReport {
    pub initial: u64,
    pub used: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: Code,
    pub message: String,
    // Boxed to keep `Result<_, Diagnostic>` small.
    pub span: Option<Box<SourceSpan>>,
    pub expected: Option<String>,
    pub actual: Option<String>,
    pub fuel: Option<FuelReport>,
}

impl Diagnostic {
    pub fn new(code: Code, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            code,
            message: message.into(),
            span: None,
            expected: None,
            actual: None,
            fuel: None,
        }
    }

    pub fn with_span(mut self, span: SourceSpan) -> Diagnostic {
        self.span = Some(Box::new(span));
        self
    }

    /// Sets the span only if none is set yet.
    pub fn or_span(mut self, span: &SourceSpan) -> Diagnostic {
        if self.span.is_none() {
            self.span = Some(Box::new(span.clone()));
        }
        self
    }

    pub fn with_types(mut self, expected: impl fmt::Display, actual: impl fmt::Display) -> Diagnostic {
        self.expected = Some(expected.to_string());
        self.actual = Some(actual.to_string());
        self
    }

    pub fn with_fuel(mut self, fuel: FuelReport) -> Diagnostic {
        self.fuel = Some(fuel);
        self
    }

    pub fn is_warning(&self) -> bool {
        self.code.is_warning()
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(span) = &self.span {
            write!(f, "{span}: ")?;
        }
        write!(f, "{}: {}", self.code, self.message)?;
        if let (Some(e), Some(a)) = (&self.expected, &self.actual) {
            write!(f, " (expected {e}, found {a})")?;
        }
        if let Some(fuel) = &self.fuel {
            write!(f, " [{} of {} steps used]", fuel.used, fuel.initial)?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostic {}
