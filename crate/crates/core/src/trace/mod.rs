//! Step-by-step derivation records for each factorization, rendered as
//! text, LaTeX or JSON.

mod build;
mod explain;
mod payload;
mod render;

use std::fmt;

pub use build::{
    penrose, trace_diagonalization, trace_eigensystem, trace_orthogonal_diagonalization, trace_pseudoinverse, trace_svd,
};
pub use explain::{explain, ComputeMode, Operation};
pub use payload::{simplify, Payload};
pub use render::{render_diagnosis_latex, render_diagnosis_text, render_latex, render_text, TextOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    Input,
    CharPoly,
    Eigenvalues,
    Eigenvectors,
    GramSchmidt,
    Normalize,
    SingularValues,
    AssembleFactor,
    Completion,
    Inverse,
    Verify,
    Fallback,
}

impl StepKind {
    pub const ALL: [StepKind; 12] = [
        StepKind::Input,
        StepKind::CharPoly,
        StepKind::Eigenvalues,
        StepKind::Eigenvectors,
        StepKind::GramSchmidt,
        StepKind::Normalize,
        StepKind::SingularValues,
        StepKind::AssembleFactor,
        StepKind::Completion,
        StepKind::Inverse,
        StepKind::Verify,
        StepKind::Fallback,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::Input => "Input",
            StepKind::CharPoly => "CharPoly",
            StepKind::Eigenvalues => "Eigenvalues",
            StepKind::Eigenvectors => "Eigenvectors",
            StepKind::GramSchmidt => "GramSchmidt",
            StepKind::Normalize => "Normalize",
            StepKind::SingularValues => "SingularValues",
            StepKind::AssembleFactor => "AssembleFactor",
            StepKind::Completion => "Completion",
            StepKind::Inverse => "Inverse",
            StepKind::Verify => "Verify",
            StepKind::Fallback => "Fallback",
        }
    }

    pub fn parse(s: &str) -> Option<StepKind> {
        StepKind::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub kind: StepKind,
    pub payload: Payload,
    pub note: String,
}

impl Step {
    pub fn new(kind: StepKind, note: impl Into<String>, payload: Payload) -> Self {
        Step {
            kind,
            payload,
            note: note.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trace {
    /// Name of the operation that produced the trace, e.g. `svd-full`.
    pub operation: String,
    pub steps: Vec<Step>,
}

impl Trace {
    pub fn new(operation: impl Into<String>) -> Self {
        Trace {
            operation: operation.into(),
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, kind: StepKind, note: impl Into<String>, payload: Payload) {
        self.steps.push(Step::new(kind, note, payload));
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step(&self, kind: StepKind) -> Option<&Step> {
        self.steps.iter().find(|s| s.kind == kind)
    }

    /// A named field of the first step of `kind` whose payload is a record.
    pub fn field(&self, kind: StepKind, label: &str) -> Option<&Payload> {
        self.steps
            .iter()
            .filter(|s| s.kind == kind)
            .find_map(|s| s.payload.field(label))
    }
}
