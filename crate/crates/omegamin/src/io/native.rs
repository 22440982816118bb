//! The native automaton format.
//!
//! ```text
//! aut <name?>
//! alphabet <letter> <letter> ...
//! acceptance <generalized-buchi|generalized-cobuchi> <k>
//! states <n>
//! initial <q>
//! name <q> <label>            (all states or none)
//! trans <src> <letter> <dst> {c1,c2,...}
//! end
//! ```
//!
//! Serialisation is canonical: states by index, transitions sorted by
//! (source, letter index, target), colour sets ascending without spaces.
//! Parsing the serialisation reproduces the automaton exactly.

use crate::automaton::{Automaton, AutomatonBuilder};
use crate::colours::{Acceptance, AcceptanceFamily, ColourSet};
use crate::{Alphabet, Error, Result};

/// Canonical textual form of an automaton.
pub fn serialise_native(aut: &Automaton) -> String {
    let mut out = String::new();
    match aut.name() {
        Some(name) => out.push_str(&format!("aut {name}\n")),
        None => out.push_str("aut\n"),
    }
    out.push_str("alphabet");
    for l in aut.alphabet().names() {
        out.push_str(&format!(" {l}"));
    }
    out.push('\n');
    let family = match aut.acceptance().family {
        AcceptanceFamily::GeneralisedBuchi => "generalized-buchi",
        AcceptanceFamily::GeneralisedCoBuchi => "generalized-cobuchi",
    };
    out.push_str(&format!("acceptance {family} {}\n", aut.acceptance().colours));
    out.push_str(&format!("states {}\n", aut.states()));
    out.push_str(&format!("initial {}\n", aut.initial()));
    if let Some(names) = aut.state_names() {
        for (q, label) in names.iter().enumerate() {
            out.push_str(&format!("name {q} {label}\n"));
        }
    }
    for t in aut.transitions() {
        out.push_str(&format!(
            "trans {} {} {} {}\n",
            t.src,
            aut.alphabet().name(t.letter),
            t.dst,
            t.colours
        ));
    }
    out.push_str("end\n");
    out
}

struct Lines<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.lines.by_ref() {
            let line = line.trim();
            if !line.is_empty() && !line.starts_with('#') {
                return Some((i + 1, line));
            }
        }
        None
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn expect_keyword<'a>(
    lines: &mut Lines<'a>,
    keyword: &str,
) -> Result<(usize, Vec<&'a str>)> {
    let (no, line) = lines
        .next_content()
        .ok_or_else(|| err(0, format!("missing `{keyword}` line")))?;
    let mut parts = line.split_whitespace();
    let head = parts.next().unwrap();
    if head != keyword {
        return Err(err(no, format!("expected `{keyword}`, found `{head}`")));
    }
    Ok((no, parts.collect()))
}

/// Parses the native format.
pub fn parse_native(text: &str) -> Result<Automaton> {
    let mut lines = Lines {
        lines: text.lines().enumerate(),
    };
    let (_, name_parts) = expect_keyword(&mut lines, "aut")?;
    let name = match name_parts.as_slice() {
        [] => None,
        [n] => Some(n.to_string()),
        _ => return Err(err(1, "automaton name must be a single token")),
    };
    let (no, letters) = expect_keyword(&mut lines, "alphabet")?;
    if letters.is_empty() {
        return Err(err(no, "alphabet must be non-empty"));
    }
    let alphabet = Alphabet::new(letters.iter().map(|s| s.to_string())).map_err(|e| match e {
        Error::InvalidAutomaton(m) => err(no, m),
        other => other,
    })?;
    let (no, acc) = expect_keyword(&mut lines, "acceptance")?;
    let [family, k] = acc.as_slice() else {
        return Err(err(no, "expected `acceptance <kind> <k>`"));
    };
    let family = match *family {
        "generalized-buchi" => AcceptanceFamily::GeneralisedBuchi,
        "generalized-cobuchi" => AcceptanceFamily::GeneralisedCoBuchi,
        other => return Err(err(no, format!("unknown acceptance kind `{other}`"))),
    };
    let colours: usize = k.parse().map_err(|_| err(no, format!("bad colour count `{k}`")))?;
    let (no, states) = expect_keyword(&mut lines, "states")?;
    let [n] = states.as_slice() else {
        return Err(err(no, "expected `states <n>`"));
    };
    let n: usize = n.parse().map_err(|_| err(no, format!("bad state count `{n}`")))?;
    let (no, initial) = expect_keyword(&mut lines, "initial")?;
    let [q] = initial.as_slice() else {
        return Err(err(no, "expected `initial <q>`"));
    };
    let initial: usize = q.parse().map_err(|_| err(no, format!("bad initial state `{q}`")))?;

    let mut builder = AutomatonBuilder::new(alphabet.clone(), Acceptance { family, colours }, n)
        .initial(initial);
    if let Some(name) = name {
        builder = builder.name(name);
    }
    let mut state_names: Vec<Option<String>> = vec![None; n];
    let mut any_names = false;
    loop {
        let Some((no, line)) = lines.next_content() else {
            return Err(err(0, "missing `end` line"));
        };
        let mut parts = line.split_whitespace();
        match parts.next().unwrap() {
            "end" => break,
            "name" => {
                let idx: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(no, "expected `name <q> <label>`"))?;
                let label = parts
                    .next()
                    .ok_or_else(|| err(no, "expected `name <q> <label>`"))?;
                if idx >= n {
                    return Err(err(no, format!("state {idx} out of range in name line")));
                }
                state_names[idx] = Some(label.to_string());
                any_names = true;
            }
            "trans" => {
                let toks: Vec<&str> = parts.collect();
                let [src, letter, dst, colours_text] = toks.as_slice() else {
                    return Err(err(no, "expected `trans <src> <letter> <dst> {colours}`"));
                };
                let src: usize =
                    src.parse().map_err(|_| err(no, format!("bad source state `{src}`")))?;
                let dst: usize =
                    dst.parse().map_err(|_| err(no, format!("bad target state `{dst}`")))?;
                if src >= n || dst >= n {
                    return Err(err(no, "transition state out of range"));
                }
                let letter = alphabet
                    .index_of(letter)
                    .ok_or_else(|| err(no, format!("unknown letter `{letter}`")))?;
                let colour_set = ColourSet::parse(colours_text, colours, no)?;
                builder = builder.transition(src, letter, dst, colour_set);
            }
            other => return Err(err(no, format!("unexpected keyword `{other}`"))),
        }
    }
    if lines.next_content().is_some() {
        return Err(err(0, "content after `end`"));
    }
    if any_names {
        let names: Result<Vec<String>> = state_names
            .into_iter()
            .enumerate()
            .map(|(q, s)| s.ok_or_else(|| err(0, format!("state {q} has no name line"))))
            .collect();
        builder = builder.state_names(names?);
    }
    builder.build().map_err(|e| match e {
        Error::InvalidAutomaton(m) => err(0, m),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trips_are_identities() {
        for a in [
            fixtures::fin_b_or_c_det2(),
            fixtures::fin_b_or_c_hd3(),
            fixtures::factor_xx_det3(),
            fixtures::factor_xx_canonical6(),
            fixtures::fin_a_or_b_nonhd3(),
        ] {
            let text = serialise_native(&a);
            let parsed = parse_native(&text).unwrap();
            assert_eq!(parsed, a);
            assert_eq!(serialise_native(&parsed), text);
        }
    }

    #[test]
    fn factor_xx_file_shape() {
        let text = serialise_native(&fixtures::factor_xx_det3());
        let a = parse_native(&text).unwrap();
        assert_eq!(a.states(), 3);
        assert_eq!(a.acceptance(), Acceptance::cobuchi(3));
    }

    #[test]
    fn colour_out_of_range_is_an_error() {
        let text = "aut\nalphabet a\nacceptance generalized-buchi 1\nstates 1\ninitial 0\ntrans 0 a 0 {1}\nend\n";
        match parse_native(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_acceptance_kind_is_an_error() {
        let text = "aut\nalphabet a\nacceptance rabin 1\nstates 1\ninitial 0\nend\n";
        assert!(matches!(parse_native(text), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn dangling_letter_is_an_error() {
        let text = "aut\nalphabet a\nacceptance generalized-buchi 1\nstates 1\ninitial 0\ntrans 0 b 0 {}\nend\n";
        assert!(matches!(parse_native(text), Err(Error::Parse { line: 6, .. })));
    }
}
