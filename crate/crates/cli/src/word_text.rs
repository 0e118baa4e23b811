//! Words as S-expressions, e.g. `(compose (gen g2) (surgery L L' (x y) 0))`.
//!
//! The printed form is the `Display` of [`Word`]; evaluating it again gives
//! an equal word, so the text is stable under a round trip.

use cobcalc::category::{self, Word};
use cobcalc::gf2::Presentation;

use crate::error::{CliError, Result};
use crate::text::rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexpr {
    Atom(String, usize),
    List(Vec<Sexpr>, usize),
}

impl Sexpr {
    fn col(&self) -> usize {
        match self {
            Self::Atom(_, c) | Self::List(_, c) => *c,
        }
    }
}

fn err(col: usize, msg: impl Into<String>) -> CliError {
    CliError::parse(1, col, msg)
}

pub fn read(text: &str) -> Result<Sexpr> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let out = read_at(&chars, &mut i)?;
    skip_space(&chars, &mut i);
    if i < chars.len() {
        return Err(err(i + 1, format!("trailing input `{}`", chars[i..].iter().collect::<String>())));
    }
    Ok(out)
}

fn skip_space(chars: &[char], i: &mut usize) {
    while *i < chars.len() && chars[*i].is_whitespace() {
        *i += 1;
    }
}

fn read_at(chars: &[char], i: &mut usize) -> Result<Sexpr> {
    skip_space(chars, i);
    let start = *i + 1;
    match chars.get(*i) {
        None => Err(err(start, "unexpected end of input")),
        Some(')') => Err(err(start, "unexpected `)`")),
        Some('(') => {
            *i += 1;
            let mut items = Vec::new();
            loop {
                skip_space(chars, i);
                match chars.get(*i) {
                    None => return Err(err(start, "unclosed `(`")),
                    Some(')') => {
                        *i += 1;
                        return Ok(Sexpr::List(items, start));
                    }
                    Some(_) => items.push(read_at(chars, i)?),
                }
            }
        }
        Some(_) => {
            let from = *i;
            while *i < chars.len() && !chars[*i].is_whitespace() && chars[*i] != '(' && chars[*i] != ')' {
                *i += 1;
            }
            Ok(Sexpr::Atom(chars[from..*i].iter().collect(), start))
        }
    }
}

fn atom(e: &Sexpr, what: &str) -> Result<String> {
    match e {
        Sexpr::Atom(s, _) => Ok(s.clone()),
        Sexpr::List(_, c) => Err(err(*c, format!("expected {what}, found a list"))),
    }
}

fn atoms(e: &Sexpr) -> Result<Vec<String>> {
    match e {
        Sexpr::List(items, _) => items.iter().map(|x| atom(x, "an intersection id")).collect(),
        Sexpr::Atom(s, c) => Err(err(*c, format!("expected a list of intersection ids, found `{s}`"))),
    }
}

fn number(e: &Sexpr) -> Result<i64> {
    let s = atom(e, "an integer")?;
    s.parse().map_err(|_| err(e.col(), format!("`{s}` is not an integer")))
}

/// Checks the shape of `e` without a presentation: heads, arities and scalars.
pub fn parse_word(text: &str) -> Result<Sexpr> {
    let e = read(text)?;
    check(&e)?;
    Ok(e)
}

fn split(e: &Sexpr) -> Result<(&str, &[Sexpr], usize)> {
    match e {
        Sexpr::List(items, c) => match items.split_first() {
            Some((Sexpr::Atom(h, _), rest)) => Ok((h, rest, *c)),
            _ => Err(err(*c, "expected (<operation> …)")),
        },
        Sexpr::Atom(s, c) => Err(err(*c, format!("expected a word, found `{s}`"))),
    }
}

fn check(e: &Sexpr) -> Result<()> {
    let (head, args, col) = split(e)?;
    let arity = |n: usize| if args.len() == n { Ok(()) } else { Err(err(col, format!("({head} …) takes {n} arguments, found {}", args.len()))) };
    match head {
        "id" | "gen" => {
            arity(1)?;
            atom(&args[0], "a label").map(|_| ())
        }
        "compose" | "union" => {
            arity(2)?;
            args.iter().try_for_each(check)
        }
        "invert" => {
            arity(1)?;
            check(&args[0])
        }
        "rotate" => {
            arity(2)?;
            check(&args[0])?;
            number(&args[1]).map(|_| ())
        }
        "leg" => {
            arity(3)?;
            check(&args[0])?;
            number(&args[1])?;
            check(&args[2])
        }
        "surgery" | "cable" => {
            arity(4)?;
            if head == "surgery" {
                atom(&args[0], "an object label")?;
                atom(&args[1], "an object label")?;
            } else {
                check(&args[0])?;
                check(&args[1])?;
            }
            atoms(&args[2])?;
            let s = atom(&args[3], "a rational")?;
            rational(&s).map(|_| ()).ok_or_else(|| err(args[3].col(), format!("`{s}` is not a rational")))
        }
        "braid" => {
            let (w, marks) = args.split_first().ok_or_else(|| err(col, "(braid …) needs a word"))?;
            check(w)?;
            marks.iter().try_for_each(|m| atoms(m).map(|_| ()))
        }
        other => Err(err(col, format!("unknown operation `{other}`"))),
    }
}

/// Evaluates a checked expression against a presentation.
pub fn eval(e: &Sexpr, p: &Presentation) -> Result<Word> {
    let (head, args, _) = split(e)?;
    let cat = &p.catalog;
    let label = |i: usize| atom(&args[i], "a label");
    let eps = |i: usize| -> Result<cobcalc::Rat> {
        let s = atom(&args[i], "a rational")?;
        rational(&s).ok_or_else(|| err(args[i].col(), format!("`{s}` is not a rational")))
    };
    let w = match head {
        "id" => category::identity(&label(0)?),
        "gen" => category::generator(cat, &label(0)?)?,
        "compose" => category::compose(&eval(&args[0], p)?, &eval(&args[1], p)?)?,
        "union" => category::union(&eval(&args[0], p)?, &eval(&args[1], p)?)?,
        "invert" => category::invert(&eval(&args[0], p)?)?,
        "rotate" => category::rotate(&eval(&args[0], p)?, number(&args[1])?)?,
        "leg" => {
            let leg = usize::try_from(number(&args[1])?).map_err(|_| err(args[1].col(), "leg index must be non-negative"))?;
            category::compose_at_leg(&eval(&args[0], p)?, leg, &eval(&args[2], p)?)?
        }
        "surgery" => category::surgery(cat, &label(0)?, &label(1)?, &atoms(&args[2])?, &eps(3)?)?,
        "cable" => category::cable(cat, &eval(&args[0], p)?, &eval(&args[1], p)?, &atoms(&args[2])?, &eps(3)?)?,
        "braid" => {
            let markings = args[1..].iter().map(atoms).collect::<Result<Vec<_>>>()?;
            category::braid(cat, &eval(&args[0], p)?, &markings)?.0
        }
        other => return Err(err(e.col(), format!("unknown operation `{other}`"))),
    };
    Ok(w)
}

/// Parses and evaluates a word.
pub fn word(text: &str, p: &Presentation) -> Result<Word> {
    eval(&parse_word(text)?, p)
}
