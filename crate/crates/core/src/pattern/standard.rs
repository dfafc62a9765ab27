//! Rewriting into standard form: creations, then entanglers, then
//! measurements and corrections.
//!
//! Only two rules are used: commands on disjoint qubits commute (as do `E`
//! and `Z`), and an entangler moves ahead of an `X` correction on one of its
//! endpoints by emitting a `Z` correction on the other:
//! `X_u^s; E_uv  →  E_uv; X_u^s; Z_v^s` in application order.

use super::{validate, Command, Pattern, PatternError};

/// Whether the pattern is `N* E* (M | X | Z)*`.
pub fn is_standard(pat: &Pattern) -> bool {
    first_nonstandard(pat).is_none()
}

fn rank(cmd: &Command) -> u8 {
    match cmd {
        Command::New(_) => 0,
        Command::Entangle(..) => 1,
        _ => 2,
    }
}

fn first_nonstandard(pat: &Pattern) -> Option<(usize, &'static str)> {
    pat.commands.windows(2).enumerate().find_map(|(i, w)| {
        (rank(&w[0]) > rank(&w[1])).then_some((
            i + 1,
            if rank(&w[1]) == 0 {
                "creation after entanglers or measurements"
            } else {
                "entangler after a measurement or correction"
            },
        ))
    })
}

pub(crate) fn require_standard(pat: &Pattern) -> Result<(), PatternError> {
    match first_nonstandard(pat) {
        None => Ok(()),
        Some((index, reason)) => Err(PatternError::NotStandard { index, reason }),
    }
}

/// Standard form of a well-formed pattern. Already standard patterns are
/// returned unchanged.
pub fn standardize(pat: &Pattern) -> Result<Pattern, PatternError> {
    validate(pat).map_err(PatternError::Invalid)?;
    let news: Vec<Command> = pat
        .commands
        .iter()
        .filter(|c| matches!(c, Command::New(_)))
        .copied()
        .collect();
    let mut entanglers = Vec::new();
    let mut rest: Vec<Command> = Vec::new();
    for cmd in pat.commands.iter().filter(|c| !matches!(c, Command::New(_))) {
        match *cmd {
            Command::Entangle(u, v) => {
                // Slide the entangler to the front of `rest`, right to left.
                let mut extra = Vec::new();
                for (pos, c) in rest.iter().enumerate() {
                    if let Command::CorrectX { qubit, signal } = *c {
                        if qubit == u || qubit == v {
                            let other = if qubit == u { v } else { u };
                            extra.push((pos, Command::CorrectZ { qubit: other, signal }));
                        }
                    }
                }
                for (offset, (pos, z)) in extra.into_iter().enumerate() {
                    rest.insert(pos + 1 + offset, z);
                }
                entanglers.push(Command::Entangle(u, v));
            }
            other => rest.push(other),
        }
    }
    let commands = news.into_iter().chain(entanglers).chain(rest).collect();
    let out = Pattern {
        commands,
        ..pat.clone()
    };
    debug_assert!(is_standard(&out));
    debug_assert!(validate(&out).is_ok());
    Ok(out)
}
