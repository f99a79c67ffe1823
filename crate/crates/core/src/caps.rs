//! Size guards for the exact and exhaustive code paths.
//!
//! Everything here is desk-scale by intent: dense eigensolves, full subset
//! scans, and combination enumerations are only offered where they finish in
//! seconds. Each guarded entry point checks its budget against [`current`]
//! and returns [`Error::SizeCap`](crate::Error::SizeCap) instead of starting
//! a computation that would not finish.
//!
//! Setting the environment variable `HEISENSPEC_CAP` to a nonnegative integer
//! replaces every budget below with that single ceiling, at the user's risk.
//! A value that does not parse leaves the defaults in place.

use std::sync::OnceLock;

#[derive(Debug, Clone)]
pub struct Caps {
    /// Largest dense matrix dimension the eigenvalue oracle accepts. Also
    /// bounds C(n, k) for token-graph builds and 2^n for Hamiltonian builds.
    pub matrix_dim: u128,
    /// Work budget for the 2^(n-1) boundary-profile subset scan.
    pub profile_scan: u128,
    /// Work budget for the 2^n isoperimetric-constant subset scan.
    pub iso_scan: u128,
    /// Budget for explicit combination enumeration (exact generalized
    /// diameters, exhaustive token-set scans).
    pub enumeration: u128,
    /// Budget for enumerating induced-subgraph family members.
    pub family: u128,
    /// Largest vertex count the full validation run accepts, since it runs
    /// every exhaustive suite at once.
    pub validate_n: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            matrix_dim: 4096,
            profile_scan: 1 << 23, // vertex counts up to 24
            iso_scan: 1 << 20,     // vertex counts up to 20
            enumeration: 2_000_000,
            family: 100_000,
            validate_n: 8,
        }
    }
}

/// The active caps: defaults, or the `HEISENSPEC_CAP` override applied to
/// every budget. Read once per process.
pub fn current() -> &'static Caps {
    static CAPS: OnceLock<Caps> = OnceLock::new();
    CAPS.get_or_init(|| match std::env::var("HEISENSPEC_CAP") {
        Ok(raw) => match raw.trim().parse::<u128>() {
            Ok(v) => Caps {
                matrix_dim: v,
                profile_scan: v,
                iso_scan: v,
                enumeration: v,
                family: v,
                validate_n: v,
            },
            Err(_) => Caps::default(),
        },
        Err(_) => Caps::default(),
    })
}

/// Checks `value <= cap` and reports the guard by name otherwise.
pub fn guard(what: &'static str, value: u128, cap: u128) -> crate::Result<()> {
    if value > cap {
        return Err(crate::Error::SizeCap { what, value, cap });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_desk_scale() {
        let caps = Caps::default();
        assert_eq!(caps.matrix_dim, 4096);
        assert_eq!(caps.profile_scan, 1 << 23);
        assert_eq!(caps.iso_scan, 1 << 20);
    }

    #[test]
    fn guard_reports_name_and_values() {
        let err = guard("dense matrix dimension", 5000, 4096).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("dense matrix dimension"));
        assert!(msg.contains("5000"));
        assert!(msg.contains("4096"));
    }
}
