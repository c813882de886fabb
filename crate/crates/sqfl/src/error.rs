use thiserror::Error;

/// Failure modes shared across the library.
///
/// Two broad classes exist and map onto distinct process exit codes in the
/// command-line wrapper: domain errors (bad argument values, exit 2) and
/// capacity errors (resource budgets and checked-arithmetic overflow, exit 3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The integer argument must be square-free but is not.
    #[error("domain error: {0} is not square-free")]
    NotSquarefree(u64),

    /// A configured budget (memory, enumeration cap, table limit) was exceeded.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// Checked 64-bit arithmetic overflowed; results would be silently wrong.
    #[error("capacity error: 64-bit overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    /// Exit code contract used by the binary: 2 for domain, 3 for capacity.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::NotSquarefree(_) => 2,
            Error::Capacity(_) | Error::Overflow(_) => 3,
        }
    }

    pub fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Error {
        Error::Capacity(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(Error::domain("x must be positive").exit_code(), 2);
        assert_eq!(Error::NotSquarefree(12).exit_code(), 2);
        assert_eq!(Error::capacity("cap exceeded").exit_code(), 3);
        assert_eq!(Error::Overflow("psi").exit_code(), 3);
    }

    #[test]
    fn messages_name_the_offender() {
        let e = Error::NotSquarefree(12);
        assert!(e.to_string().contains("12"));
        let e = Error::Overflow("dedekind_psi");
        assert!(e.to_string().contains("dedekind_psi"));
    }
}
