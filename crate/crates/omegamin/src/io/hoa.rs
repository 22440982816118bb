//! HOA v1 interop, restricted to transition-based generalised (co)Büchi
//! acceptance. Letters become binary valuations of `ceil(log2 σ)` atomic
//! propositions in declaration order; labels are full conjunctions of
//! literals. Importing accepts exactly the exported subset and names any
//! unsupported feature it meets.

use crate::automaton::{Automaton, AutomatonBuilder};
use crate::colours::{Acceptance, AcceptanceFamily, ColourSet};
use crate::{Alphabet, Error, Result};

fn ap_count(sigma: usize) -> usize {
    let mut bits = 0;
    while (1usize << bits) < sigma {
        bits += 1;
    }
    bits
}

fn label_for(letter: usize, aps: usize) -> String {
    if aps == 0 {
        return "t".to_string();
    }
    (0..aps)
        .map(|bit| {
            if letter & (1 << bit) != 0 {
                format!("{bit}")
            } else {
                format!("!{bit}")
            }
        })
        .collect::<Vec<_>>()
        .join("&")
}

/// Renders the automaton as a HOA v1 document.
pub fn export_hoa(aut: &Automaton) -> String {
    let sigma = aut.alphabet().len();
    let aps = ap_count(sigma);
    let k = aut.acceptance().colours;
    let mut out = String::new();
    out.push_str("HOA: v1\n");
    if let Some(name) = aut.name() {
        out.push_str(&format!("name: \"{name}\"\n"));
    }
    out.push_str(&format!("States: {}\n", aut.states()));
    out.push_str(&format!("Start: {}\n", aut.initial()));
    out.push_str(&format!("AP: {aps}"));
    for bit in 0..aps {
        out.push_str(&format!(" \"p{bit}\""));
    }
    out.push('\n');
    let (acc_name, acc_formula) = match (aut.acceptance().family, k) {
        (AcceptanceFamily::GeneralisedBuchi, 0) => ("generalized-Buchi 0".to_string(), "t".to_string()),
        (AcceptanceFamily::GeneralisedCoBuchi, 0) => {
            ("generalized-co-Buchi 0".to_string(), "f".to_string())
        }
        (AcceptanceFamily::GeneralisedBuchi, k) => (
            format!("generalized-Buchi {k}"),
            (0..k).map(|c| format!("Inf({c})")).collect::<Vec<_>>().join("&"),
        ),
        (AcceptanceFamily::GeneralisedCoBuchi, k) => (
            format!("generalized-co-Buchi {k}"),
            (0..k).map(|c| format!("Fin({c})")).collect::<Vec<_>>().join("|"),
        ),
    };
    out.push_str(&format!("acc-name: {acc_name}\n"));
    out.push_str(&format!("Acceptance: {k} {acc_formula}\n"));
    out.push_str("properties: trans-labels explicit-labels trans-acc\n");
    out.push_str("--BODY--\n");
    for q in 0..aut.states() {
        out.push_str(&format!("State: {q}\n"));
        for t in aut.from_state(q) {
            let sets: Vec<String> = t.colours.iter().map(|c| c.to_string()).collect();
            if sets.is_empty() {
                out.push_str(&format!("[{}] {}\n", label_for(t.letter, aps), t.dst));
            } else {
                out.push_str(&format!(
                    "[{}] {} {{{}}}\n",
                    label_for(t.letter, aps),
                    t.dst,
                    sets.join(" ")
                ));
            }
        }
    }
    out.push_str("--END--\n");
    out
}

fn unsupported(feature: impl Into<String>) -> Error {
    Error::UnsupportedHoa(feature.into())
}

fn parse_label(text: &str, aps: usize, sigma: usize) -> Result<usize> {
    let text = text.trim();
    if aps == 0 {
        if text == "t" {
            return Ok(0);
        }
        return Err(unsupported(format!("label `{text}` with no atomic propositions")));
    }
    if text == "t" || text == "f" || text.contains('|') {
        return Err(unsupported(format!(
            "label `{text}` (only full conjunctions of literals are supported)"
        )));
    }
    let mut letter = 0usize;
    let mut seen = vec![false; aps];
    for literal in text.split('&') {
        let literal = literal.trim();
        let (negated, ap_text) = match literal.strip_prefix('!') {
            Some(rest) => (true, rest),
            None => (false, literal),
        };
        let ap: usize = ap_text
            .parse()
            .map_err(|_| unsupported(format!("label literal `{literal}`")))?;
        if ap >= aps {
            return Err(unsupported(format!("atomic proposition {ap} out of range")));
        }
        if seen[ap] {
            return Err(unsupported(format!("repeated atomic proposition {ap}")));
        }
        seen[ap] = true;
        if !negated {
            letter |= 1 << ap;
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(unsupported(format!(
            "label `{text}` is not a full conjunction over all atomic propositions"
        )));
    }
    if letter >= sigma {
        return Err(unsupported(format!("letter valuation {letter} out of range")));
    }
    Ok(letter)
}

/// Parses the supported HOA v1 subset.
pub fn import_hoa(text: &str) -> Result<Automaton> {
    let mut states: Option<usize> = None;
    let mut start: Option<usize> = None;
    let mut aps: Option<usize> = None;
    let mut acceptance: Option<Acceptance> = None;
    let mut name: Option<String> = None;

    let mut lines = text.lines().enumerate().peekable();
    let (_, first) = lines
        .next()
        .ok_or_else(|| unsupported("empty document"))?;
    if first.trim() != "HOA: v1" {
        return Err(unsupported(format!("version line `{}`", first.trim())));
    }
    // Header.
    let mut body_reached = false;
    for (no, line) in lines.by_ref() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line == "--BODY--" {
            body_reached = true;
            break;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse {
                line: no + 1,
                message: format!("malformed header line `{line}`"),
            })?;
        let rest = rest.trim();
        match key {
            "States" => {
                states = Some(rest.parse().map_err(|_| Error::Parse {
                    line: no + 1,
                    message: format!("bad state count `{rest}`"),
                })?)
            }
            "Start" => {
                if rest.contains('&') {
                    return Err(unsupported("universal initial states (alternation)"));
                }
                if start.is_some() {
                    return Err(unsupported("multiple initial states"));
                }
                start = Some(rest.parse().map_err(|_| Error::Parse {
                    line: no + 1,
                    message: format!("bad start state `{rest}`"),
                })?)
            }
            "AP" => {
                let mut parts = rest.split_whitespace();
                let count: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse {
                        line: no + 1,
                        message: "bad AP line".into(),
                    })?;
                aps = Some(count);
            }
            "Acceptance" => {
                let (k_text, formula) = rest
                    .split_once(' ')
                    .ok_or_else(|| unsupported(format!("acceptance line `{rest}`")))?;
                let k: usize = k_text.parse().map_err(|_| Error::Parse {
                    line: no + 1,
                    message: format!("bad acceptance set count `{k_text}`"),
                })?;
                acceptance = Some(parse_acceptance_formula(formula.trim(), k)?);
            }
            "name" => name = Some(rest.trim_matches('"').to_string()),
            "acc-name" | "properties" | "tool" => {}
            other => {
                return Err(unsupported(format!("header item `{other}:`")));
            }
        }
    }
    if !body_reached {
        return Err(unsupported("missing --BODY--"));
    }
    let states = states.ok_or_else(|| unsupported("missing States: header"))?;
    let start = start.ok_or_else(|| unsupported("missing Start: header"))?;
    let aps = aps.ok_or_else(|| unsupported("missing AP: header"))?;
    let acceptance = acceptance.ok_or_else(|| unsupported("missing Acceptance: header"))?;
    if aps > 16 {
        return Err(unsupported("more than 16 atomic propositions"));
    }
    let sigma = 1usize << aps;
    let alphabet = Alphabet::new((0..sigma).map(|l| format!("l{l}")))?;

    let mut builder =
        AutomatonBuilder::new(alphabet, acceptance, states.max(1)).initial(start);
    if let Some(name) = name {
        builder = builder.name(name);
    }
    let mut current: Option<usize> = None;
    for (no, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line == "--END--" {
            return builder.build();
        }
        if let Some(rest) = line.strip_prefix("State:") {
            let rest = rest.trim();
            if rest.contains('{') {
                return Err(unsupported("state-based acceptance"));
            }
            let mut parts = rest.split_whitespace();
            let q: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse {
                    line: no + 1,
                    message: format!("bad state line `{line}`"),
                })?;
            current = Some(q);
            continue;
        }
        // Transition line: [label] dst {sets}?
        let q = current.ok_or_else(|| Error::Parse {
            line: no + 1,
            message: "transition before any State: line".into(),
        })?;
        if !line.starts_with('[') {
            return Err(unsupported("implicit transition labels"));
        }
        let close = line.find(']').ok_or_else(|| Error::Parse {
            line: no + 1,
            message: "unterminated label".into(),
        })?;
        let letter = parse_label(&line[1..close], aps, sigma)?;
        let rest = line[close + 1..].trim();
        let (dst_text, sets_text) = match rest.split_once('{') {
            Some((d, s)) => (d.trim(), Some(s.trim_end_matches('}').trim())),
            None => (rest, None),
        };
        if dst_text.contains('&') {
            return Err(unsupported("universal branching (alternation)"));
        }
        let dst: usize = dst_text.parse().map_err(|_| Error::Parse {
            line: no + 1,
            message: format!("bad destination `{dst_text}`"),
        })?;
        let mut colours = ColourSet::EMPTY;
        if let Some(sets) = sets_text {
            for tok in sets.split_whitespace() {
                let c: usize = tok.parse().map_err(|_| Error::Parse {
                    line: no + 1,
                    message: format!("bad acceptance set `{tok}`"),
                })?;
                if c >= acceptance.colours {
                    return Err(Error::Parse {
                        line: no + 1,
                        message: format!("acceptance set {c} out of range"),
                    });
                }
                colours = colours.with(c);
            }
        }
        builder = builder.transition(q, letter, dst, colours);
    }
    Err(unsupported("missing --END--"))
}

fn parse_acceptance_formula(formula: &str, k: usize) -> Result<Acceptance> {
    if k == 0 {
        return match formula {
            "t" => Ok(Acceptance::buchi(0)),
            "f" => Ok(Acceptance::cobuchi(0)),
            other => Err(unsupported(format!("acceptance formula `{other}` with 0 sets"))),
        };
    }
    let inf: Vec<String> = (0..k).map(|c| format!("Inf({c})")).collect();
    let fin: Vec<String> = (0..k).map(|c| format!("Fin({c})")).collect();
    if formula == inf.join("&") {
        Ok(Acceptance::buchi(k))
    } else if formula == fin.join("|") {
        Ok(Acceptance::cobuchi(k))
    } else {
        Err(unsupported(format!(
            "acceptance formula `{formula}` (only generalised Büchi/coBüchi conjunctions and disjunctions in set order)"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_colour_cobuchi_exports_fin_zero() {
        let text = export_hoa(&fixtures::fin_b_or_c_det2());
        assert!(text.contains("Acceptance: 1 Fin(0)"));
        assert!(text.contains("acc-name: generalized-co-Buchi 1"));
    }

    #[test]
    fn two_letter_alphabet_uses_one_proposition() {
        let alphabet = Alphabet::of_chars("ab").unwrap();
        let a = AutomatonBuilder::new(alphabet, Acceptance::buchi(1), 1)
            .transition(0, 0, 0, ColourSet::singleton(0))
            .transition(0, 1, 0, ColourSet::EMPTY)
            .build()
            .unwrap();
        let text = export_hoa(&a);
        assert!(text.contains("AP: 1 \"p0\""));
        assert!(text.contains("[!0] 0 {0}"));
        assert!(text.contains("[0] 0\n"));
    }

    #[test]
    fn export_import_export_is_stable() {
        for a in [
            fixtures::fin_b_or_c_det2(),
            fixtures::factor_xx_det3(),
            fixtures::fin_a_or_b_nonhd3(),
        ] {
            let text = export_hoa(&a);
            let imported = import_hoa(&text).unwrap();
            assert_eq!(export_hoa(&imported), text);
        }
    }

    #[test]
    fn unsupported_features_are_named() {
        let state_based = "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 1 Fin(0)\n--BODY--\nState: 0 {0}\n--END--\n";
        match import_hoa(state_based) {
            Err(Error::UnsupportedHoa(m)) => assert!(m.contains("state-based")),
            other => panic!("expected unsupported-feature error, got {other:?}"),
        }
        let alternating = "HOA: v1\nStates: 2\nStart: 0\nAP: 1 \"p0\"\nAcceptance: 1 Fin(0)\n--BODY--\nState: 0\n[0] 0&1\n--END--\n";
        match import_hoa(alternating) {
            Err(Error::UnsupportedHoa(m)) => assert!(m.contains("alternation")),
            other => panic!("expected unsupported-feature error, got {other:?}"),
        }
    }
}
