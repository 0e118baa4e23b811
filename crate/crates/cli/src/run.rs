//! Command dispatch: one engine operation per invocation, reported as lines.

use cobcalc::cabling::{cabling_equivalent, check_axioms, default_sample, Verdict};
use cobcalc::category::{compose, rotate, Catalog, Word};
use cobcalc::geometry::{detect_crossings, shadow, CobordismDiagram};
use cobcalc::gf2::{k0, omega, theta, BitVec, Presentation, Quotient};
use cobcalc::metrics::frag_distance;
use cobcalc::objects::ActionRule;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::document::{parse, Document};
use crate::error::{CliError, Result};
use crate::report::RunReport;
use crate::svg::render;
use crate::text::fmt_rat;
use crate::word_text::{eval, parse_word, read, Sexpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    Shadow,
    Compose,
    Rotate,
    Cable,
    Surgery,
    Theta,
    Equiv,
    K0,
    Omega,
    Dist,
    CheckAxioms,
    Render,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Validate => "validate",
            Self::Shadow => "shadow",
            Self::Compose => "compose",
            Self::Rotate => "rotate",
            Self::Cable => "cable",
            Self::Surgery => "surgery",
            Self::Theta => "theta",
            Self::Equiv => "equiv",
            Self::K0 => "k0",
            Self::Omega => "omega",
            Self::Dist => "dist",
            Self::CheckAxioms => "check-axioms",
            Self::Render => "render",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub depth: usize,
    pub family: Vec<String>,
    pub strict_minmax: bool,
    pub seed: Option<u64>,
}

impl Default for Options {
    fn default() -> Self {
        Self { depth: 4, family: Vec::new(), strict_minmax: false, seed: None }
    }
}

pub struct Outcome {
    pub report: RunReport,
    pub svg: Option<String>,
}

/// Runs `command` on the input text. Errors end up in the report as an
/// `error=` line with the matching status, never as a panic.
pub fn run(command: Command, input: Option<&str>, args: &[String], opts: &Options) -> Outcome {
    let mut digest_args = args.to_vec();
    digest_args.push(format!("depth={}", opts.depth));
    digest_args.push(format!("family={}", opts.family.join(" ")));
    digest_args.push(format!("strict-minmax={}", opts.strict_minmax));
    digest_args.push(format!("seed={:?}", opts.seed));
    let mut report = RunReport::new(command.name(), input, &digest_args);
    let mut svg = None;
    let mut ctx = Ctx { input, args, opts, report: &mut report, svg: &mut svg };
    match ctx.execute(command) {
        Ok(status) => report.status = status,
        Err(e) => {
            report.line(format!("error={e}"));
            report.status = e.exit_code();
        }
    }
    Outcome { report, svg }
}

struct Ctx<'a> {
    input: Option<&'a str>,
    args: &'a [String],
    opts: &'a Options,
    report: &'a mut RunReport,
    svg: &'a mut Option<String>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn chain_labels(p: &Presentation, a: &str, b: &str, v: &BitVec) -> Result<String> {
    Ok(format!("{{{}}}", p.hom(a, b)?.labels_of(v).join(",")))
}

/// Re-runs the catalog checks that parsing skips, then the algebraic ones.
pub fn check_presentation(p: &Presentation) -> Result<()> {
    let mut cat = Catalog { generators: Default::default(), ..p.catalog.clone() };
    for o in p.catalog.objects.values() {
        o.validate()?;
    }
    for (name, shape) in &p.catalog.generators {
        cat.add_generator(name, shape.clone())?;
    }
    p.validate()?;
    Ok(())
}

impl Ctx<'_> {
    fn arity(&self, n: usize, what: &str) -> Result<()> {
        if self.args.len() == n {
            Ok(())
        } else {
            Err(usage(format!("expected {what}, got {} argument(s)", self.args.len())))
        }
    }

    fn document(&self) -> Result<Document> {
        parse(self.input.ok_or_else(|| usage("this command needs --input"))?)
    }

    fn presentation(&self) -> Result<Presentation> {
        let mut p = self.document()?.presentation.ok_or_else(|| usage("the input has no presentation sections"))?;
        if self.opts.strict_minmax {
            p.catalog.rule = ActionRule::MinMax;
        }
        check_presentation(&p)?;
        Ok(p)
    }

    fn word(&self, i: usize, p: &Presentation) -> Result<Word> {
        eval(&parse_word(&self.args[i])?, p)
    }

    fn diagram_or_word(&self) -> Result<(CobordismDiagram, Option<Word>)> {
        match self.args.len() {
            0 => {
                let d = self.document()?.diagram.ok_or_else(|| usage("the input has no [diagram] section"))?;
                d.validate()?;
                Ok((d, None))
            }
            1 => {
                let w = self.word(0, &self.presentation()?)?;
                Ok((w.diagram().clone(), Some(w)))
            }
            n => Err(usage(format!("expected at most one word, got {n} arguments"))),
        }
    }

    fn emit_word(&mut self, w: &Word) -> Result<()> {
        self.report.line(format!("word={w}"));
        self.report.line(format!("source={}", w.source()));
        self.report.line(format!("negs={}", w.negs().join(" ")));
        self.report.line(format!("shadow={}", fmt_rat(&w.shadow()?)));
        Ok(())
    }

    fn emit_quotient(&mut self, q: &Quotient) {
        self.report.line(format!("dim={}", q.dim()));
        self.report.line(format!("basis={}", q.basis.join(" ")));
        for r in &q.relations {
            let terms: Vec<&str> = r.iter_ones().map(|i| q.objects[i].as_str()).collect();
            self.report.line(format!("relation={}", terms.join("+")));
        }
    }

    /// `(head a b ids eps)` from separately given arguments.
    fn built(&self, head: &str, words: bool) -> Result<Sexpr> {
        self.arity(4, if words { "V W (ids) EPS" } else { "L L' (ids) EPS" })?;
        let mut items = vec![Sexpr::Atom(head.to_string(), 1)];
        for a in &self.args[..2] {
            items.push(if words { parse_word(a)? } else { read(a)? });
        }
        items.push(read(&self.args[2])?);
        items.push(read(&self.args[3])?);
        Ok(Sexpr::List(items, 1))
    }

    fn execute(&mut self, command: Command) -> Result<u8> {
        match command {
            Command::Validate => {
                self.arity(0, "no arguments")?;
                let doc = self.document()?;
                if let Some(mut p) = doc.presentation {
                    if self.opts.strict_minmax {
                        p.catalog.rule = ActionRule::MinMax;
                    }
                    check_presentation(&p)?;
                    self.report.line(format!("objects={} generators={} triangles={} nullcobs={}", p.catalog.objects.len(), p.catalog.generators.len(), p.triangles.len(), p.nullcobs.len()));
                }
                if let Some(d) = doc.diagram {
                    d.validate()?;
                    self.report.line(format!("strands={} ends={} crossings={}", d.strands.len(), d.end_count(), detect_crossings(&d)?.len()));
                }
                self.report.line("valid");
            }
            Command::Shadow => {
                let (d, _) = self.diagram_or_word()?;
                self.report.line(format!("shadow={}", fmt_rat(&shadow(&d)?)));
            }
            Command::Compose => {
                self.arity(2, "SECOND FIRST")?;
                let p = self.presentation()?;
                let w = compose(&self.word(0, &p)?, &self.word(1, &p)?)?;
                self.emit_word(&w)?;
            }
            Command::Rotate => {
                self.arity(2, "WORD STEPS")?;
                let steps: i64 = self.args[1].parse().map_err(|_| CliError::parse(1, 1, format!("`{}` is not an integer", self.args[1])))?;
                let p = self.presentation()?;
                let w = rotate(&self.word(0, &p)?, steps)?;
                self.emit_word(&w)?;
            }
            Command::Cable | Command::Surgery => {
                let e = self.built(command.name(), command == Command::Cable)?;
                let w = eval(&e, &self.presentation()?)?;
                self.emit_word(&w)?;
            }
            Command::Theta => {
                self.arity(1, "WORD")?;
                let p = self.presentation()?;
                let t = theta(&self.word(0, &p)?, &p)?;
                self.report.line(format!("source={} target={}", t.source, t.target));
                self.report.line(format!("theta={}", chain_labels(&p, &t.source, &t.target, &t.rep)?));
            }
            Command::Equiv => {
                self.arity(2, "WORD WORD")?;
                let p = self.presentation()?;
                let c = cabling_equivalent(&self.word(0, &p)?, &self.word(1, &p)?, &p)?;
                let (a, _) = &c.theta_values;
                match (c.verdict, &c.witness) {
                    (Verdict::Equivalent, Some(eta)) => self.report.line(format!("equivalent witness={}", chain_labels(&p, &a.source, &a.target, eta)?)),
                    (Verdict::Equivalent, None) => self.report.line("equivalent"),
                    (Verdict::Inequivalent, _) => self.report.line("inequivalent"),
                }
                if let Some(cable) = &c.cable {
                    self.report.line(format!("cable={cable}"));
                }
                self.report.line(format!("verified={}", c.verify(&p)?));
            }
            Command::K0 | Command::Omega => {
                self.arity(0, "no arguments")?;
                let p = self.presentation()?;
                let q = if command == Command::K0 { k0(&p) } else { omega(&p) };
                self.emit_quotient(&q);
            }
            Command::Dist => {
                self.arity(2, "L L'")?;
                let p = self.presentation()?;
                let r = frag_distance(&p, &self.args[0], &self.args[1], &self.opts.family, self.opts.depth)?;
                let value = r.value.as_ref().map_or_else(|| "inf".to_string(), fmt_rat);
                let cert = r.certificate.as_ref().map_or_else(|| "none".to_string(), Word::to_string);
                self.report.line(format!("value={value} bound={} certificate={cert}", r.bound));
            }
            Command::CheckAxioms => {
                self.arity(0, "no arguments")?;
                let p = self.presentation()?;
                let mut sample = default_sample(&p);
                if let Some(seed) = self.opts.seed {
                    sample.extend(random_composites(&p, &sample, seed));
                }
                let report = check_axioms(&p, &sample)?;
                self.report.line(format!("sample={}", sample.len()));
                for l in report.to_string().lines() {
                    self.report.line(l);
                }
                self.report.line(format!("result={}", if report.passed() { "PASS" } else { "FAIL" }));
                return Ok(if report.passed() { 0 } else { 1 });
            }
            Command::Render => {
                let (d, w) = self.diagram_or_word()?;
                if let Some(w) = w {
                    self.report.line(format!("word={w}"));
                }
                let svg = render(&d)?;
                let ends = d.end_count();
                self.report.line(format!("strands={} ends={ends} crossings={} annotations={}", d.strands.len(), detect_crossings(&d)?.len(), d.annotations.len()));
                let digest: String = Sha256::digest(svg.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
                self.report.line(format!("svg-sha256={digest}"));
                *self.svg = Some(svg);
            }
        }
        Ok(0)
    }
}

/// Up to eight extra sample words: composites of sample words whose ends
/// match, drawn with a seeded generator.
fn random_composites(p: &Presentation, sample: &[Word], seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..sample.len()).flat_map(|i| (0..sample.len()).map(move |j| (i, j))).collect();
    pairs.shuffle(&mut rng);
    pairs
        .into_iter()
        .filter_map(|(i, j)| compose(&sample[i], &sample[j]).ok())
        .filter(|w| theta(w, p).is_ok() && !sample.contains(w))
        .take(8)
        .collect()
}
