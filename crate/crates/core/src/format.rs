//! Line-oriented text format for transducers.
//!
//! ```text
//! # same number of a's modulo 2
//! kind letter-transducer
//! inputs a b
//! outputs a b
//! states even odd
//! initials even
//! finals even
//! even a / a -> even
//! even a / b -> odd
//! ```
//!
//! Sequential and subsequential machines declare a single `initial` state,
//! may output any word (`-` for the empty one, sequential only), and
//! subsequential ones give a `finalout <state> <letter>` line per final state.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result, SemanticError};
use crate::machine::{Machine, SequentialTransducer, SubsequentialTransducer};
use crate::nfa::StateId;
use crate::transducer::LetterTransducer;

const KEYWORDS: [&str; 8] = [
    "kind", "inputs", "outputs", "states", "initial", "initials", "finals", "finalout",
];
const RESERVED: [&str; 3] = ["/", "->", "-"];

/// A parsed machine together with the state names used in the file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransducerFile {
    pub machine: Machine,
    pub state_names: Vec<String>,
}

impl TransducerFile {
    /// Names states `q0, q1, …`.
    pub fn from_machine(machine: Machine) -> Self {
        let state_names = (0..machine.num_states()).map(|q| format!("q{q}")).collect();
        TransducerFile { machine, state_names }
    }

    pub fn print(&self) -> String {
        print_with_names(&self.machine, &self.state_names)
    }
}

/// Prints with generated state names.
pub fn print(machine: &Machine) -> String {
    TransducerFile::from_machine(machine.clone()).print()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Letter,
    Sequential,
    Subsequential,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    /// Column just past the last token, for "expected …" errors.
    end: usize,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start: Option<usize> = None;
        let mut column = 0;
        for (byte, ch) in content.char_indices() {
            column += 1;
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s, byte));
                }
            } else if start.is_none() {
                start = Some(byte);
            }
        }
        if let Some(s) = start {
            tokens.push((s, content.len()));
        }
        if tokens.is_empty() {
            continue;
        }
        let col_of = |byte: usize| content[..byte].chars().count() + 1;
        lines.push(Line {
            number: i + 1,
            tokens: tokens
                .iter()
                .map(|&(s, e)| Token {
                    text: &content[s..e],
                    column: col_of(s),
                })
                .collect(),
            end: column + 1,
        });
    }
    lines
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn semantic(line: usize, kind: SemanticError) -> Error {
    Error::Semantic { line, kind }
}

struct Header<'a> {
    line: usize,
    values: Vec<&'a Token<'a>>,
}

struct RawTransition<'a> {
    line: usize,
    source: &'a Token<'a>,
    input: &'a Token<'a>,
    output: Vec<&'a Token<'a>>,
    target: &'a Token<'a>,
}

fn parse_transition<'a>(line: &'a Line<'a>) -> Result<RawTransition<'a>> {
    let t = &line.tokens;
    let at = |i: usize| t.get(i).map_or(line.end, |tok| tok.column);
    if t.len() < 2 {
        return Err(parse_error(line.number, at(1), "expected an input letter"));
    }
    if t.get(2).map(|x| x.text) != Some("/") {
        return Err(parse_error(line.number, at(2), "expected `/`"));
    }
    let arrow = t
        .iter()
        .position(|x| x.text == "->")
        .ok_or_else(|| parse_error(line.number, line.end, "expected `->`"))?;
    if arrow < 3 {
        return Err(parse_error(line.number, at(arrow), "expected an output word or `-`"));
    }
    if arrow + 1 >= t.len() {
        return Err(parse_error(line.number, line.end, "expected a target state"));
    }
    if arrow + 2 < t.len() {
        return Err(parse_error(
            line.number,
            at(arrow + 2),
            "unexpected token after the target state",
        ));
    }
    let mut output: Vec<&Token> = t[3..arrow].iter().collect();
    if output.len() == 1 && output[0].text == "-" {
        output.clear();
    } else if let Some(dash) = output.iter().find(|x| x.text == "-") {
        return Err(parse_error(line.number, dash.column, "`-` must stand alone"));
    }
    Ok(RawTransition {
        line: line.number,
        source: &t[0],
        input: &t[1],
        output,
        target: &t[arrow + 1],
    })
}

fn declare_names(header: &Header<'_>, what: &str) -> Result<Vec<String>> {
    let mut seen = BTreeSet::new();
    let mut names = Vec::new();
    for tok in &header.values {
        if RESERVED.contains(&tok.text) || KEYWORDS.contains(&tok.text) {
            return Err(parse_error(
                header.line,
                tok.column,
                format!("`{}` cannot be used as a {what} name", tok.text),
            ));
        }
        if !seen.insert(tok.text) {
            return Err(semantic(header.line, SemanticError::Duplicate(tok.text.to_string())));
        }
        names.push(tok.text.to_string());
    }
    Ok(names)
}

fn alphabet(header: &Header<'_>) -> Result<Alphabet> {
    let names = declare_names(header, "letter")?;
    if names.is_empty() {
        return Err(parse_error(header.line, 1, "alphabet must not be empty"));
    }
    Alphabet::new(names)
}

/// Parses a machine description.
pub fn parse(text: &str) -> Result<TransducerFile> {
    let lines = tokenize(text);
    let Some(first) = lines.first() else {
        return Err(semantic(1, SemanticError::Missing("kind")));
    };
    if first.tokens[0].text != "kind" {
        return Err(parse_error(
            first.number,
            first.tokens[0].column,
            "expected `kind` on the first line",
        ));
    }
    let mut headers: HashMap<&str, Header> = HashMap::new();
    let mut finalouts: Vec<&Line> = Vec::new();
    let mut transitions = Vec::new();
    for line in &lines {
        let head = line.tokens[0].text;
        if head == "finalout" {
            finalouts.push(line);
        } else if KEYWORDS.contains(&head) {
            if headers.contains_key(head) {
                return Err(semantic(line.number, SemanticError::Duplicate(head.to_string())));
            }
            let values = line.tokens[1..].iter().collect();
            headers.insert(
                head,
                Header {
                    line: line.number,
                    values,
                },
            );
        } else {
            transitions.push(parse_transition(line)?);
        }
    }

    let kind_header = &headers["kind"];
    let kind = match kind_header.values.as_slice() {
        [k] if k.text == "letter-transducer" => Kind::Letter,
        [k] if k.text == "sequential" => Kind::Sequential,
        [k] if k.text == "subsequential" => Kind::Subsequential,
        [k, ..] => {
            return Err(parse_error(
                kind_header.line,
                k.column,
                "expected `letter-transducer`, `sequential` or `subsequential`",
            ))
        }
        [] => return Err(parse_error(kind_header.line, first.end, "expected a machine kind")),
    };
    let require = |name: &'static str| {
        headers
            .get(name)
            .ok_or_else(|| semantic(1, SemanticError::Missing(name)))
    };
    let input = alphabet(require("inputs")?)?;
    let output = alphabet(require("outputs")?)?;
    let states_header = require("states")?;
    let state_names = declare_names(states_header, "state")?;
    if state_names.is_empty() {
        return Err(parse_error(states_header.line, 1, "at least one state is required"));
    }
    let state_index: HashMap<&str, StateId> = state_names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let state = |line: usize, tok: &Token| -> Result<StateId> {
        state_index
            .get(tok.text)
            .copied()
            .ok_or_else(|| semantic(line, SemanticError::UndeclaredState(tok.text.to_string())))
    };
    let letter = |alpha: &Alphabet, line: usize, tok: &Token| -> Result<Letter> {
        alpha
            .index_of(tok.text)
            .ok_or_else(|| semantic(line, SemanticError::UndeclaredLetter(tok.text.to_string())))
    };

    let initials: Vec<StateId> = match (headers.get("initial"), headers.get("initials")) {
        (Some(_), Some(h)) => return Err(semantic(h.line, SemanticError::Duplicate("initials".into()))),
        (None, None) => return Err(semantic(1, SemanticError::Missing("initial"))),
        (Some(h), None) => match h.values.as_slice() {
            [q] => vec![state(h.line, q)?],
            _ => return Err(parse_error(h.line, 1, "`initial` takes exactly one state")),
        },
        (None, Some(h)) => {
            if kind != Kind::Letter {
                return Err(semantic(h.line, SemanticError::WrongKind("initials".into())));
            }
            h.values.iter().map(|q| state(h.line, q)).collect::<Result<_>>()?
        }
    };
    let finals_header = require("finals")?;
    let finals: Vec<StateId> = finals_header
        .values
        .iter()
        .map(|q| state(finals_header.line, q))
        .collect::<Result<_>>()?;

    let n = state_names.len();
    let machine = match kind {
        Kind::Letter => {
            if let Some(line) = finalouts.first() {
                return Err(semantic(line.number, SemanticError::WrongKind("finalout".into())));
            }
            let mut trans = Vec::new();
            for t in &transitions {
                let [b] = t.output.as_slice() else {
                    return Err(semantic(t.line, SemanticError::NotLetterToLetter));
                };
                trans.push((
                    state(t.line, t.source)?,
                    letter(&input, t.line, t.input)?,
                    letter(&output, t.line, b)?,
                    state(t.line, t.target)?,
                ));
            }
            Machine::Letter(LetterTransducer::from_transitions(
                input, output, n, trans, initials, finals,
            )?)
        }
        Kind::Sequential | Kind::Subsequential => {
            let mut m = SequentialTransducer::new(input.clone(), output.clone(), n, initials[0])?;
            for &q in &finals {
                m.set_final(q, true);
            }
            for t in &transitions {
                let p = state(t.line, t.source)?;
                let a = letter(&input, t.line, t.input)?;
                let word = t
                    .output
                    .iter()
                    .map(|b| letter(&output, t.line, b))
                    .collect::<Result<Vec<_>>>()?;
                if kind == Kind::Subsequential && word.len() != 1 {
                    return Err(semantic(t.line, SemanticError::NotLetterToLetter));
                }
                let q = state(t.line, t.target)?;
                if m.transition(p, a).is_some() {
                    return Err(semantic(
                        t.line,
                        SemanticError::Nondeterministic {
                            state: t.source.text.to_string(),
                            letter: t.input.text.to_string(),
                        },
                    ));
                }
                m.set_transition(p, a, word, q)?;
            }
            if kind == Kind::Sequential {
                if let Some(line) = finalouts.first() {
                    return Err(semantic(line.number, SemanticError::WrongKind("finalout".into())));
                }
                Machine::Sequential(m)
            } else {
                let mut final_output: Vec<Option<Letter>> = vec![None; n];
                for line in &finalouts {
                    let [_, q, b] = line.tokens.as_slice() else {
                        return Err(parse_error(
                            line.number,
                            line.end,
                            "expected `finalout <state> <letter>`",
                        ));
                    };
                    let q = state(line.number, q)?;
                    if !m.is_final(q) {
                        return Err(semantic(
                            line.number,
                            SemanticError::FinalOutputOnNonFinal(state_names[q].clone()),
                        ));
                    }
                    if final_output[q].is_some() {
                        return Err(semantic(
                            line.number,
                            SemanticError::Duplicate(format!("finalout {}", state_names[q])),
                        ));
                    }
                    final_output[q] = Some(letter(&output, line.number, b)?);
                }
                if let Some(q) = (0..n).find(|&q| m.is_final(q) && final_output[q].is_none()) {
                    return Err(semantic(
                        finals_header.line,
                        SemanticError::MissingFinalOutput(state_names[q].clone()),
                    ));
                }
                Machine::Subsequential(SubsequentialTransducer::new(m, final_output)?)
            }
        }
    };
    Ok(TransducerFile { machine, state_names })
}

fn print_with_names(machine: &Machine, names: &[String]) -> String {
    let mut out = String::new();
    let mut line = |parts: Vec<&str>| {
        out.push_str(&parts.join(" "));
        out.push('\n');
    };
    let name = |q: StateId| names[q].as_str();
    let finals_of = |is_final: &dyn Fn(StateId) -> bool| -> Vec<&str> {
        (0..names.len()).filter(|&q| is_final(q)).map(name).collect()
    };
    match machine {
        Machine::Letter(t) => {
            let (input, output) = (t.input_alphabet(), t.output_alphabet());
            line(vec!["kind", "letter-transducer"]);
            line([vec!["inputs"], input.names().iter().map(String::as_str).collect()].concat());
            line([vec!["outputs"], output.names().iter().map(String::as_str).collect()].concat());
            line([vec!["states"], names.iter().map(String::as_str).collect()].concat());
            line(
                [
                    vec!["initials"],
                    t.automaton().initials().iter().map(|&q| name(q)).collect(),
                ]
                .concat(),
            );
            line([vec!["finals"], finals_of(&|q| t.automaton().is_final(q))].concat());
            for (p, a, b, q) in t.transitions() {
                line(vec![name(p), input.name(a), "/", output.name(b), "->", name(q)]);
            }
        }
        Machine::Sequential(m) => print_sequential(&mut line, m, names, "sequential"),
        Machine::Subsequential(s) => {
            let m = s.base();
            print_sequential(&mut line, m, names, "subsequential");
            for q in (0..names.len()).filter(|&q| m.is_final(q)) {
                let b = s.final_output(q).expect("final state has a final output");
                line(vec!["finalout", name(q), m.output_alphabet().name(b)]);
            }
        }
    }
    out
}

fn print_sequential(line: &mut dyn FnMut(Vec<&str>), m: &SequentialTransducer, names: &[String], kind: &str) {
    let (input, output) = (m.input_alphabet(), m.output_alphabet());
    line(vec!["kind", kind]);
    line([vec!["inputs"], input.names().iter().map(String::as_str).collect()].concat());
    line([vec!["outputs"], output.names().iter().map(String::as_str).collect()].concat());
    line([vec!["states"], names.iter().map(String::as_str).collect()].concat());
    line(vec!["initial", &names[m.initial()]]);
    let finals: Vec<&str> = (0..names.len())
        .filter(|&q| m.is_final(q))
        .map(|q| names[q].as_str())
        .collect();
    line([vec!["finals"], finals].concat());
    for (p, a, w, q) in m.transitions() {
        let mut parts = vec![names[p].as_str(), input.name(a), "/"];
        if w.is_empty() {
            parts.push("-");
        } else {
            parts.extend(w.iter().map(|&b| output.name(b)));
        }
        parts.extend(["->", names[q].as_str()]);
        line(parts);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const EVEN_A: &str = "\
# same number of a's modulo 2
kind letter-transducer
inputs a b
outputs a b
states even odd
initials even
finals even
even a / a -> even
even b / b -> even
even a / b -> odd
even b / a -> odd
odd a / a -> odd
odd b / b -> odd
odd a / b -> even   # back to even
odd b / a -> even
";

    #[test]
    fn parses_letter_transducer() {
        let file = parse(EVEN_A).unwrap();
        assert_eq!(file.state_names, ["even", "odd"]);
        let Machine::Letter(t) = &file.machine else { panic!() };
        assert!(t.relation_equal(&fixtures::even_a()).unwrap());
        assert_eq!(parse(&file.print()).unwrap(), file);
    }

    #[test]
    fn reports_nondeterminism() {
        let text = "kind sequential\ninputs a\noutputs x\nstates p\ninitial p\nfinals p\np a / x -> p\np a / - -> p\n";
        let err = parse(text).unwrap_err();
        assert!(matches!(
            err,
            Error::Semantic {
                line: 8,
                kind: SemanticError::Nondeterministic { .. }
            }
        ));
        assert!(err.to_string().contains("NONDETERMINISTIC"));
    }

    #[test]
    fn reports_positions() {
        let text = "kind letter-transducer\ninputs a\noutputs a\nstates p\ninitials p\nfinals p\np a a -> p\n";
        assert!(matches!(parse(text), Err(Error::Parse { line: 7, column: 5, .. })));
        let text = "kind letter-transducer\ninputs a\noutputs a\nstates p\ninitials p\nfinals p\np a / a -> r\n";
        assert!(matches!(
            parse(text),
            Err(Error::Semantic {
                line: 7,
                kind: SemanticError::UndeclaredState(_)
            })
        ));
        let text = "kind letter-transducer\ninputs a\noutputs a\nstates p\ninitials p\nfinals p\np a / a a -> p\n";
        assert!(matches!(
            parse(text),
            Err(Error::Semantic {
                kind: SemanticError::NotLetterToLetter,
                ..
            })
        ));
        assert!(matches!(
            parse("inputs a\n"),
            Err(Error::Parse { line: 1, column: 1, .. })
        ));
        assert!(matches!(
            parse("kind sequential\ninputs a\n"),
            Err(Error::Semantic {
                kind: SemanticError::Missing("outputs"),
                ..
            })
        ));
    }

    #[test]
    fn subsequential_round_trip() {
        let text = "\
kind subsequential
inputs a b
outputs x t1 t2
states p q
initial p
finals p q
p a / x -> q
p b / x -> p
q a / x -> p
q b / x -> q
finalout p t1
finalout q t2
";
        let file = parse(text).unwrap();
        assert_eq!(file.print(), text);
        let missing = text.replace("finalout q t2\n", "");
        assert!(matches!(
            parse(&missing),
            Err(Error::Semantic {
                kind: SemanticError::MissingFinalOutput(_),
                ..
            })
        ));
    }
}
