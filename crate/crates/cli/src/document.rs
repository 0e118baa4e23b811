//! Presentation files: a sequence of `[section args…]` blocks.
//!
//! ```text
//! [settings]        rule pointwise|minmax, clearance <r>
//! [objects]         <label> | <label> components <c>… | <label> point <id> <f-> <f+> [marked]
//! [intersections L L′]  <id> <f_L> <f_L′>
//! [complex L L′]    <basis label> <image of d as bits>
//! [unit L]          <bits>
//! [mu2 L L′ L″]     <x> <y> <bits of μ₂(x, y)>   (zero entries omitted)
//! [generator g]     source, negs, cycle, inverse, then diagram lines
//! [triangle]        a, b, c, f, iota, pi, split <σ> <ρ>
//! [nullcob]         one tuple of labels per line
//! [delta]           <L> <L′> <r>
//! [diagram]         diagram lines
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. [`print`] emits the
//! canonical form, which [`parse`] reads back to an equal document.

use std::collections::{BTreeMap, BTreeSet};

use cobcalc::category::GeneratorShape;
use cobcalc::geometry::CobordismDiagram;
use cobcalc::gf2::{BitVec, ChainComplex, GeneratorData, Presentation, Triangle};
use cobcalc::objects::{ActionRule, DoublePoint, IntersectionPoint, MarkedObject};

use crate::diagram_text::{parse_diagram_line, print_diagram};
use crate::error::{CliError, Result};
use crate::text::{fmt_bits, fmt_rat, Fields};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub presentation: Option<Presentation>,
    pub diagram: Option<CobordismDiagram>,
}

const SECTIONS: [(&str, usize); 11] = [
    ("settings", 0),
    ("objects", 0),
    ("intersections", 2),
    ("complex", 2),
    ("unit", 1),
    ("mu2", 3),
    ("generator", 1),
    ("triangle", 0),
    ("nullcob", 0),
    ("delta", 0),
    ("diagram", 0),
];

struct Block<'a> {
    name: &'a str,
    args: Vec<String>,
    line: usize,
    body: Vec<(usize, &'a str)>,
}

impl Block<'_> {
    fn fields(&self) -> impl Iterator<Item = Fields<'_>> {
        self.body.iter().map(|&(n, l)| Fields::new(n, l))
    }
}

/// A header is `[name …]` whose name is a plain word; object labels such as
/// `[A#[x]B]#[y]C` start with a bracket too but contain `#`.
fn header(line: &str) -> Option<(&str, Vec<&str>)> {
    let inner = line.trim_end().strip_prefix('[')?.strip_suffix(']')?;
    let mut words = inner.split_whitespace();
    let name = words.next()?;
    if name.contains(['#', '|', '[', ']']) {
        return None;
    }
    Some((name, words.collect()))
}

fn blocks(text: &str) -> Result<Vec<Block<'_>>> {
    let mut out: Vec<Block<'_>> = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some((name, args)) = header(trimmed) {
            let col = raw.len() - trimmed.len() + 2;
            let Some(&(_, arity)) = SECTIONS.iter().find(|(s, _)| *s == name) else {
                return Err(CliError::parse(n, col, format!("unknown section [{name}]")));
            };
            if args.len() != arity {
                return Err(CliError::parse(n, col, format!("[{name}] takes {arity} argument(s), found {}", args.len())));
            }
            if name != "triangle" && !seen.insert((name, args.clone())) {
                return Err(CliError::parse(n, col, format!("duplicate section [{}]", trimmed.trim_end().trim_matches(['[', ']']))));
            }
            out.push(Block { name, args: args.into_iter().map(String::from).collect(), line: n, body: Vec::new() });
            continue;
        }
        match out.last_mut() {
            Some(b) => b.body.push((n, raw)),
            None => return Err(CliError::parse(n, 1, "content before the first section")),
        }
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<Document> {
    let blocks = blocks(text)?;
    let of = |name: &'static str| blocks.iter().filter(move |b| b.name == name);
    let mut doc = Document::default();
    if let Some(b) = of("diagram").next() {
        doc.diagram = Some(diagram_block(b, false)?.0);
    }
    if blocks.iter().all(|b| b.name == "diagram") {
        return Ok(doc);
    }
    let mut p = Presentation::default();
    for b in of("settings") {
        settings(b, &mut p)?;
    }
    for b in of("objects") {
        objects(b, &mut p)?;
    }
    for b in of("intersections") {
        for f in b.fields() {
            let id = f.get(0, "an intersection id")?;
            let point = IntersectionPoint { id: id.text.to_string(), f_first: f.rational(1)?, f_second: f.rational(2)? };
            f.exact(3, "the intersection point")?;
            if p.catalog.intersections.get(&b.args[0], &b.args[1], id.text).is_ok() {
                return Err(f.err(id.col, format!("duplicate intersection point {}", id.text)));
            }
            p.catalog.intersections.insert(&b.args[0], &b.args[1], point);
        }
    }
    for b in of("complex") {
        complex(b, &mut p)?;
    }
    for b in of("unit") {
        let mut lines = b.fields();
        let f = lines.next().ok_or_else(|| CliError::parse(b.line, 1, "[unit] needs one bit string"))?;
        p.units.insert(b.args[0].clone(), f.bits(0)?);
        f.exact(1, "the unit")?;
        if let Some(f) = lines.next() {
            return Err(f.err(1, "[unit] takes a single line"));
        }
    }
    for b in of("mu2") {
        mu2(b, &mut p)?;
    }
    for b in of("generator") {
        generator(b, &mut p)?;
    }
    for b in of("triangle") {
        p.triangles.push(triangle(b)?);
    }
    for b in of("nullcob") {
        for f in b.fields() {
            p.nullcobs.push(f.tokens.iter().map(|t| t.text.to_string()).collect());
        }
    }
    for b in of("delta") {
        for f in b.fields() {
            let (a, c) = (f.get(0, "an object")?, f.get(1, "an object")?);
            let key = (a.text.to_string(), c.text.to_string());
            if p.deltas.insert(key, f.rational(2)?).is_some() {
                return Err(f.err(a.col, format!("duplicate delta for ({}, {})", a.text, c.text)));
            }
            f.exact(3, "the delta")?;
        }
    }
    doc.presentation = Some(p);
    Ok(doc)
}

fn settings(b: &Block<'_>, p: &mut Presentation) -> Result<()> {
    for f in b.fields() {
        let key = f.get(0, "a setting")?;
        let value = f.get(1, "a value")?;
        match key.text {
            "rule" => {
                p.catalog.rule = match value.text {
                    "pointwise" => ActionRule::Pointwise,
                    "minmax" => ActionRule::MinMax,
                    other => return Err(f.err(value.col, format!("unknown rule `{other}`"))),
                }
            }
            "clearance" => p.catalog.bend_clearance = f.rational(1)?,
            other => return Err(f.err(key.col, format!("unknown setting `{other}`"))),
        }
        f.exact(2, "the setting")?;
    }
    Ok(())
}

fn objects(b: &Block<'_>, p: &mut Presentation) -> Result<()> {
    for f in b.fields() {
        let label = f.get(0, "an object label")?;
        let Some(kind) = f.tokens.get(1) else {
            if p.catalog.objects.insert(label.text.to_string(), MarkedObject::new(label.text)).is_some() {
                return Err(f.err(label.col, format!("duplicate object {}", label.text)));
            }
            continue;
        };
        let object = p.catalog.objects.get_mut(label.text).ok_or_else(|| f.err(label.col, format!("object {} is not declared", label.text)))?;
        match kind.text {
            "components" => object.components = f.tokens[2..].iter().map(|t| t.text.to_string()).collect(),
            "point" => {
                let id = f.get(2, "a double point id")?;
                let point = DoublePoint { id: id.text.to_string(), f_minus: f.rational(3)?, f_plus: f.rational(4)? };
                match f.tokens.get(5) {
                    Some(t) if t.text == "marked" => {
                        object.marking.insert(point.id.clone());
                        f.exact(6, "the double point")?;
                    }
                    _ => f.exact(5, "the double point")?,
                }
                if object.double_points.insert(point.id.clone(), point).is_some() {
                    return Err(f.err(id.col, format!("duplicate double point {}", id.text)));
                }
            }
            other => return Err(f.err(kind.col, format!("expected `components` or `point`, found `{other}`"))),
        }
    }
    Ok(())
}

fn complex(b: &Block<'_>, p: &mut Presentation) -> Result<()> {
    let (mut basis, mut images) = (Vec::new(), Vec::new());
    for f in b.fields() {
        let label = f.get(0, "a basis label")?;
        if basis.iter().any(|l| l == label.text) {
            return Err(f.err(label.col, format!("duplicate basis element {}", label.text)));
        }
        basis.push(label.text.to_string());
        images.push(f.bits(1)?);
        f.exact(2, "the basis element")?;
    }
    let hom = ChainComplex::new(basis, images).map_err(CliError::Engine)?;
    p.homs.insert((b.args[0].clone(), b.args[1].clone()), hom);
    Ok(())
}

fn basis_index(p: &Presentation, a: &str, b: &str, f: &Fields<'_>, i: usize) -> Result<usize> {
    let t = f.get(i, "a basis label")?;
    p.homs
        .get(&(a.to_string(), b.to_string()))
        .and_then(|h| h.index_of(t.text))
        .ok_or_else(|| f.err(t.col, format!("{} is not a basis element of CF({a}, {b})", t.text)))
}

fn mu2(b: &Block<'_>, p: &mut Presentation) -> Result<()> {
    let [a, m, c] = [&b.args[0], &b.args[1], &b.args[2]];
    let (nbc, nac) = (p.hom_dim(m, c), p.hom_dim(a, c));
    let mut table = vec![BitVec::zeros(nac); p.hom_dim(a, m) * nbc];
    let mut set = BTreeSet::new();
    for f in b.fields() {
        let (i, j) = (basis_index(p, a, m, &f, 0)?, basis_index(p, m, c, &f, 1)?);
        if !set.insert((i, j)) {
            return Err(f.err(1, "duplicate μ₂ entry"));
        }
        table[i * nbc + j] = f.bits(2)?;
        f.exact(3, "the μ₂ entry")?;
    }
    p.mu2.insert((a.clone(), m.clone(), c.clone()), table);
    Ok(())
}

/// Generator keys and the line each was given on.
type Keys = BTreeMap<&'static str, (usize, Vec<String>)>;

fn diagram_block(b: &Block<'_>, generator: bool) -> Result<(CobordismDiagram, Keys)> {
    let mut d = CobordismDiagram::default();
    let mut keys = BTreeMap::new();
    for f in b.fields() {
        if parse_diagram_line(&f, &mut d)? {
            continue;
        }
        let key = f.tokens[0];
        let known = ["source", "negs", "cycle", "inverse"].into_iter().find(|k| generator && *k == key.text);
        let Some(k) = known else {
            return Err(f.err(key.col, format!("unexpected `{}`", key.text)));
        };
        let values = f.tokens[1..].iter().map(|t| t.text.to_string()).collect();
        if keys.insert(k, (f.line, values)).is_some() {
            return Err(f.err(key.col, format!("`{k}` given twice")));
        }
    }
    Ok((d, keys))
}

fn generator(b: &Block<'_>, p: &mut Presentation) -> Result<()> {
    let name = &b.args[0];
    let (diagram, mut keys) = diagram_block(b, true)?;
    let mut single = |key: &'static str, required: bool| -> Result<Option<(usize, String)>> {
        match keys.remove(key) {
            Some((n, v)) if v.len() == 1 => Ok(Some((n, v.into_iter().next().unwrap_or_default()))),
            Some((n, _)) => Err(CliError::parse(n, key.len() + 2, format!("`{key}` takes one value"))),
            None if required => Err(CliError::parse(b.line, 1, format!("[generator {name}] needs `{key}`"))),
            None => Ok(None),
        }
    };
    let source = single("source", true)?.map(|(_, s)| s).unwrap_or_default();
    let cycle = single("cycle", false)?;
    let inverse = single("inverse", false)?.map(|(_, s)| s);
    let negs = keys.remove("negs").map(|(_, v)| v).ok_or_else(|| CliError::parse(b.line, 1, format!("[generator {name}] needs `negs`")))?;
    p.catalog.generators.insert(name.clone(), GeneratorShape { source, negs, diagram });
    if let Some((n, bits)) = cycle {
        let cycle = crate::text::bits(&bits).ok_or_else(|| CliError::parse(n, 7, format!("`{bits}` is not a bit string")))?;
        p.generators.insert(name.clone(), GeneratorData { cycle, inverse });
    } else if inverse.is_some() {
        return Err(CliError::parse(b.line, 1, format!("[generator {name}] has an inverse but no cycle")));
    }
    Ok(())
}

fn triangle(b: &Block<'_>) -> Result<Triangle> {
    let mut labels: BTreeMap<&str, String> = BTreeMap::new();
    let mut chains: BTreeMap<&str, BitVec> = BTreeMap::new();
    let mut split = None;
    for f in b.fields() {
        let key = f.get(0, "a triangle field")?;
        let dup = match key.text {
            k @ ("a" | "b" | "c") => {
                let l = f.get(1, "an object label")?;
                f.exact(2, "the label")?;
                labels.insert(k, l.text.to_string()).is_some()
            }
            k @ ("f" | "iota" | "pi") => {
                let v = f.bits(1)?;
                f.exact(2, "the chain")?;
                chains.insert(k, v).is_some()
            }
            "split" => {
                let pair = (f.bits(1)?, f.bits(2)?);
                f.exact(3, "the splitting")?;
                split.replace(pair).is_some()
            }
            other => return Err(f.err(key.col, format!("unknown triangle field `{other}`"))),
        };
        if dup {
            return Err(f.err(key.col, format!("`{}` given twice", key.text)));
        }
    }
    let missing = |k: &str| CliError::parse(b.line, 1, format!("[triangle] needs `{k}`"));
    let mut label = |k: &'static str| labels.remove(k).ok_or_else(|| missing(k));
    let (a, bl, c) = (label("a")?, label("b")?, label("c")?);
    let mut chain = |k: &'static str| chains.remove(k).ok_or_else(|| missing(k));
    Ok(Triangle { a, b: bl, c, f: chain("f")?, iota: chain("iota")?, pi: chain("pi")?, split })
}

fn diagram_section(d: &CobordismDiagram, out: &mut String) {
    out.push_str("[diagram]\n");
    print_diagram(d, out);
}

pub fn print(doc: &Document) -> String {
    let mut out = String::new();
    if let Some(p) = &doc.presentation {
        print_presentation(p, &mut out);
    }
    if let Some(d) = &doc.diagram {
        if !out.is_empty() {
            out.push('\n');
        }
        diagram_section(d, &mut out);
    }
    out
}

/// The canonical `[diagram]` file of a single diagram.
pub fn print_diagram_file(d: &CobordismDiagram) -> String {
    print(&Document { presentation: None, diagram: Some(d.clone()) })
}

fn print_presentation(p: &Presentation, out: &mut String) {
    let mut sections: Vec<String> = Vec::new();
    let rule = match p.catalog.rule {
        ActionRule::Pointwise => "pointwise",
        ActionRule::MinMax => "minmax",
    };
    sections.push(format!("[settings]\nrule {rule}\nclearance {}\n", fmt_rat(&p.catalog.bend_clearance)));
    let mut s = String::from("[objects]\n");
    for (label, o) in &p.catalog.objects {
        s.push_str(&format!("{label}\n"));
        if o.components != MarkedObject::new(label.as_str()).components {
            s.push_str(&format!("{label} components{}\n", o.components.iter().map(|c| format!(" {c}")).collect::<String>()));
        }
        for (id, dp) in &o.double_points {
            let marked = if o.marking.contains(id) { " marked" } else { "" };
            s.push_str(&format!("{label} point {id} {} {}{marked}\n", fmt_rat(&dp.f_minus), fmt_rat(&dp.f_plus)));
        }
    }
    sections.push(s);
    for (a, b, points) in p.catalog.intersections.pairs() {
        let mut s = format!("[intersections {a} {b}]\n");
        for x in points {
            s.push_str(&format!("{} {} {}\n", x.id, fmt_rat(&x.f_first), fmt_rat(&x.f_second)));
        }
        sections.push(s);
    }
    for ((a, b), hom) in &p.homs {
        let mut s = format!("[complex {a} {b}]\n");
        for (label, image) in hom.basis().iter().zip(hom.images()) {
            s.push_str(&format!("{label} {}\n", fmt_bits(image)));
        }
        sections.push(s);
    }
    for (l, unit) in &p.units {
        sections.push(format!("[unit {l}]\n{}\n", fmt_bits(unit)));
    }
    for ((a, b, c), table) in &p.mu2 {
        let mut s = format!("[mu2 {a} {b} {c}]\n");
        let (left, right) = (p.homs.get(&(a.clone(), b.clone())), p.homs.get(&(b.clone(), c.clone())));
        if let (Some(left), Some(right)) = (left, right) {
            let nbc = right.dim();
            for (k, v) in table.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                s.push_str(&format!("{} {} {}\n", left.basis()[k / nbc], right.basis()[k % nbc], fmt_bits(v)));
            }
        }
        sections.push(s);
    }
    for (name, shape) in &p.catalog.generators {
        let mut s = format!("[generator {name}]\nsource {}\nnegs {}\n", shape.source, shape.negs.join(" "));
        if let Some(data) = p.generators.get(name) {
            s.push_str(&format!("cycle {}\n", fmt_bits(&data.cycle)));
            if let Some(inv) = &data.inverse {
                s.push_str(&format!("inverse {inv}\n"));
            }
        }
        print_diagram(&shape.diagram, &mut s);
        sections.push(s);
    }
    for t in &p.triangles {
        let mut s = format!("[triangle]\na {}\nb {}\nc {}\nf {}\niota {}\npi {}\n", t.a, t.b, t.c, fmt_bits(&t.f), fmt_bits(&t.iota), fmt_bits(&t.pi));
        if let Some((sigma, rho)) = &t.split {
            s.push_str(&format!("split {} {}\n", fmt_bits(sigma), fmt_bits(rho)));
        }
        sections.push(s);
    }
    if !p.nullcobs.is_empty() {
        sections.push(format!("[nullcob]\n{}", p.nullcobs.iter().map(|t| format!("{}\n", t.join(" "))).collect::<String>()));
    }
    if !p.deltas.is_empty() {
        sections.push(format!("[delta]\n{}", p.deltas.iter().map(|((a, b), d)| format!("{a} {b} {}\n", fmt_rat(d))).collect::<String>()));
    }
    out.push_str(&sections.join("\n"));
}
