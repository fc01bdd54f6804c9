use std::fmt;

use isospectral::apps::AppsError;
use isospectral::reduce::ReduceError;
use isospectral::wfield::RootError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    /// Bad input: malformed file, bad flag value, or a request the graph
    /// cannot satisfy.
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    NoConvergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Invalid(_) => 2,
            CliError::NoConvergence(_) => 3,
        }
    }

    pub fn invalid(msg: impl fmt::Display) -> Self {
        CliError::Invalid(msg.to_string())
    }
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::NoConvergence { .. } => CliError::NoConvergence(e.to_string()),
            RootError::ZeroPolynomial => CliError::invalid("characteristic polynomial vanishes identically"),
        }
    }
}

fn chain(vs: &[usize]) -> String {
    let mut labels: Vec<String> = vs.iter().map(|v| format!("v{}", v + 1)).collect();
    if vs.len() > 1 && vs.first() != vs.last() {
        labels.push(format!("v{}", vs[0] + 1));
    }
    labels.join(" -> ")
}

impl From<ReduceError> for CliError {
    fn from(e: ReduceError) -> Self {
        let msg = match e {
            ReduceError::Roots(r) => return r.into(),
            ReduceError::CycleInComplement { cycle } => {
                format!("not structural: removed vertices form the cycle {}", chain(&cycle))
            }
            ReduceError::DiagonalIsLambda { vertex } => {
                format!("not structural: loop weight at v{} is identically λ", vertex + 1)
            }
            ReduceError::VertexOutOfRange(v) => format!("vertex v{} out of range", v + 1),
            ReduceError::DuplicateVertex(v) => format!("vertex v{} listed twice", v + 1),
            ReduceError::PiClassLost { i, j } => {
                format!("reduction left the π ≤ 0 class at (v{}, v{})", i + 1, j + 1)
            }
            ReduceError::NotNested { next } => {
                format!("kept set {} is not inside the previous one", crate::format::show_labels(&next))
            }
            other => other.to_string(),
        };
        CliError::Invalid(msg)
    }
}

impl From<AppsError> for CliError {
    fn from(e: AppsError) -> Self {
        match e {
            AppsError::Roots(r) => r.into(),
            AppsError::Reduce(r) => r.into(),
            AppsError::Unbounded => CliError::NoConvergence(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_error_kind() {
        let stuck = RootError::NoConvergence {
            iterations: 500,
            best: Vec::new(),
        };
        assert_eq!(CliError::from(stuck.clone()).exit_code(), 3);
        assert_eq!(CliError::from(ReduceError::Roots(stuck)).exit_code(), 3);
        assert_eq!(CliError::from(AppsError::Unbounded).exit_code(), 3);
        assert_eq!(CliError::from(ReduceError::EmptyKeep).exit_code(), 2);
        let cyc = CliError::from(ReduceError::CycleInComplement { cycle: vec![1, 4] });
        assert_eq!(cyc.to_string(), "not structural: removed vertices form the cycle v2 -> v5 -> v2");
    }
}
