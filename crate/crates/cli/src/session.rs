//! Dynamic sessions: one operation per line, one output line per `?` and
//! per insertion. Handles are echoed 1-based.

use std::io::{BufRead, Write};

use extensor::dynamic::{DominatingSet, ExactCover, Handle, Matching, PackingCounter, Packing, PartialCover};
use extensor::graph::UndirectedGraph;
use extensor::ring::{Gf2m, Integers, Ring, DEFAULT_FIELD_DEGREE};
use extensor::Error;
use num_traits::ToPrimitive;

use crate::input::{clean, numbers, op};
use crate::{Failure, Problem};

/// Everything a session needs once the header and flags are merged.
pub struct Config {
    pub problem: Problem,
    pub randomized: bool,
    pub seed: u64,
    /// Universe size, or vertex count for `tdom`.
    pub universe: usize,
    /// `k`, or `t` for `tdom`.
    pub k: usize,
    pub m: usize,
    pub sizes: Vec<usize>,
    pub graph: Option<UndirectedGraph>,
    pub epsilon: Option<f64>,
}

trait Engine {
    fn plus(&mut self, args: &[usize]) -> Result<Option<String>, Error>;
    fn minus(&mut self, args: &[usize]) -> Result<(), Error>;
    fn other(&mut self, op: char, _args: &[usize]) -> Result<(), Error> {
        Err(Error::InvalidUpdate(format!("unknown operation {op:?}")))
    }
    fn answer(&self) -> String;
}

fn yes(b: bool) -> String {
    if b { "YES" } else { "NO" }.into()
}

fn min(t: Option<usize>) -> String {
    t.map_or_else(|| "NONE".into(), |t| format!("MIN {t}"))
}

/// The argument of `- h`, 0-based.
fn handle(args: &[usize]) -> Result<Handle, Error> {
    match args {
        &[h] if h > 0 => Ok(Handle(h as u64 - 1)),
        &[_] => Err(Error::InvalidUpdate("handles start at 1".into())),
        _ => Err(Error::InvalidUpdate("expected \"- h\"".into())),
    }
}

fn inserted(h: Handle) -> Option<String> {
    Some(format!("HANDLE {}", h.0 + 1))
}

macro_rules! set_engine {
    ($ty:ident, $answer:expr) => {
        impl<R: Ring> Engine for $ty<R> {
            fn plus(&mut self, args: &[usize]) -> Result<Option<String>, Error> {
                self.insert(args).map(inserted)
            }
            fn minus(&mut self, args: &[usize]) -> Result<(), Error> {
                self.remove(handle(args)?)
            }
            fn answer(&self) -> String {
                $answer(self.query())
            }
        }
    };
}

set_engine!(ExactCover, yes);
set_engine!(PartialCover, min);
set_engine!(Packing, yes);
set_engine!(Matching, yes);

impl Engine for PackingCounter {
    fn plus(&mut self, args: &[usize]) -> Result<Option<String>, Error> {
        self.insert(args).map(inserted)
    }
    fn minus(&mut self, args: &[usize]) -> Result<(), Error> {
        self.remove(handle(args)?)
    }
    fn answer(&self) -> String {
        format!("COUNT {:.4}", self.estimate().to_f64().unwrap_or(f64::NAN))
    }
}

/// `+ u v` / `- u v` edit edges; `x v` removes a vertex and `a v` brings
/// it back isolated.
struct Tdom<R: Ring>(DominatingSet<R>);

impl<R: Ring> Tdom<R> {
    fn vertex(&self, v: usize) -> Result<usize, Error> {
        let n = self.0.graph().n();
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange(v, n));
        }
        Ok(v - 1)
    }

    fn edge(&mut self, args: &[usize], insert: bool) -> Result<(), Error> {
        match args {
            &[u, v] => {
                let (u, v) = (self.vertex(u)?, self.vertex(v)?);
                self.0.update_edge(u, v, insert)
            }
            _ => Err(Error::InvalidUpdate("expected an edge \"u v\"".into())),
        }
    }
}

impl<R: Ring> Engine for Tdom<R> {
    fn plus(&mut self, args: &[usize]) -> Result<Option<String>, Error> {
        self.edge(args, true).map(|_| None)
    }
    fn minus(&mut self, args: &[usize]) -> Result<(), Error> {
        self.edge(args, false)
    }
    fn other(&mut self, op: char, args: &[usize]) -> Result<(), Error> {
        let &[v] = args else {
            return Err(Error::InvalidUpdate(format!("expected \"{op} v\"")));
        };
        let v = self.vertex(v)?;
        match op {
            'x' => self.0.remove_vertex(v),
            'a' => self.0.add_vertex(v),
            _ => Err(Error::InvalidUpdate(format!("unknown operation {op:?}"))),
        }
    }
    fn answer(&self) -> String {
        min(self.0.query())
    }
}

fn engine<R: Ring + 'static>(ring: R, c: &Config) -> Result<Box<dyn Engine>, Error> {
    Ok(match c.problem {
        Problem::ExactCover => Box::new(ExactCover::new(ring, c.universe, c.k, c.seed)?),
        Problem::PartialCover => Box::new(PartialCover::new(ring, c.universe, c.k, c.seed)?),
        Problem::Packing => Box::new(Packing::new(ring, c.universe, c.m, c.k, c.seed)?),
        Problem::Matching => Box::new(Matching::new(ring, &c.sizes, c.k, c.seed)?),
        Problem::Tdom => {
            let g = c.graph.clone().unwrap_or_else(|| UndirectedGraph::new(c.universe));
            Box::new(Tdom(DominatingSet::new(ring, &g, c.k, c.seed)?))
        }
    })
}

/// Reads the session line by line so that answers stream. A first line
/// starting with a digit is a header and is handed to `configure`.
pub fn run(
    input: impl BufRead,
    out: &mut impl Write,
    configure: impl FnOnce(Option<Vec<usize>>) -> Result<Config, Failure>,
) -> Result<(), Failure> {
    let mut body = input.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut first = None;
    for (l, text) in body.by_ref() {
        let text = text.map_err(Failure::io)?;
        if let Some(s) = clean(&text) {
            first = Some((l, s.to_string()));
            break;
        }
    }
    let head = match &first {
        Some((l, s)) if s.starts_with(|c: char| c.is_ascii_digit()) => Some(numbers(*l, s)?),
        _ => None,
    };
    let pending = if head.is_some() { None } else { first };
    let c = configure(head)?;
    let mut e: Box<dyn Engine> = match (c.epsilon, c.randomized) {
        (Some(eps), _) => Box::new(PackingCounter::new(c.universe, c.m, c.k, eps, c.seed)?),
        (None, true) => engine(Gf2m::new(DEFAULT_FIELD_DEGREE)?, &c)?,
        (None, false) => engine(Integers, &c)?,
    };
    let rest = body.filter_map(|(l, text)| match text {
        Ok(t) => clean(&t).map(|s| Ok((l, s.to_string()))),
        Err(e) => Some(Err(Failure::io(e))),
    });
    for item in pending.map(Ok).into_iter().chain(rest) {
        let (l, s) = item?;
        if s == "?" {
            writeln!(out, "{}", e.answer()).map_err(Failure::io)?;
            out.flush().map_err(Failure::io)?;
            continue;
        }
        let (o, args) = op(l, &s)?;
        let r = match o {
            '+' => e.plus(&args),
            '-' => e.minus(&args).map(|_| None),
            '?' => return Err(Failure::Parse(format!("line {l}: \"?\" takes no arguments"))),
            _ => e.other(o, &args).map(|_| None),
        };
        match r {
            Ok(Some(line)) => writeln!(out, "{line}").map_err(Failure::io)?,
            Ok(None) => {}
            // Removals report 1-based handles, as they were echoed.
            Err(Error::UnknownHandle(h)) => eprintln!("line {l}: unknown or dead handle {}", h + 1),
            Err(err) => eprintln!("line {l}: {err}"),
        }
    }
    out.flush().map_err(Failure::io)
}
