use super::{inner_graph, Blueprint, EdgeWeights, KPathOracle, Layout, Mode, Target, VertexCode};
use crate::algebra::{check_dims, Blade, CodeVector};
use crate::container::*;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::ring::RingParams;

impl<R: RingParams> KPathOracle<R> {
    /// Serialized state: header, scalar parameters, input graph, codes, then
    /// `Q` (row-major), `S`, `F` and `Z`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let ring = &self.ring;
        let bp = &self.bp;
        let mut out = Vec::new();
        write_header(&mut out, R::TAG);
        put_usize(&mut out, bp.k);
        put_u32(&mut out, bp.dims);
        put_usize(&mut out, bp.l_max);
        put_usize(&mut out, bp.graph.n());
        put_u64(&mut out, bp.seed);
        ring.write_params(&mut out);
        put_usize(&mut out, bp.cap);
        put_u8(
            &mut out,
            match bp.layout {
                Layout::Plain => 0,
                Layout::Split => 1,
                Layout::TwoCopy => 2,
            },
        );
        match bp.target {
            Target::Top => put_u8(&mut out, 0),
            Target::Graded(d) => {
                put_u8(&mut out, 1);
                put_usize(&mut out, d);
            }
        }
        match bp.weights {
            EdgeWeights::Unit => put_u8(&mut out, 0),
            EdgeWeights::Prf(s) => {
                put_u8(&mut out, 1);
                put_u64(&mut out, s);
            }
        }
        put_u8(&mut out, bp.strict as u8);
        put_usize(&mut out, bp.graph.m());
        for (u, v) in bp.graph.edges() {
            put_usize(&mut out, u);
            put_usize(&mut out, v);
        }
        put_usize(&mut out, bp.codes.len());
        for c in &bp.codes {
            put_u8(&mut out, c.graded as u8);
            put_usize(&mut out, c.blade.degree());
            for f in c.blade.factors() {
                for e in f.entries() {
                    ring.write_elem(e, &mut out);
                }
            }
        }
        for p in self.q.iter().chain(&self.s).chain(&self.f).chain(std::iter::once(&self.z)) {
            put_poly(ring, &mut out, p);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut input = bytes;
        let input = &mut input;
        let mode = read_header(input)?;
        if mode != R::TAG {
            return Err(Error::Format(format!("mode byte {mode} does not match the requested ring")));
        }
        let k = get_usize(input)?;
        let dims = get_u32(input)?;
        check_dims(dims)?;
        let l_max = get_usize(input)?;
        let n = get_usize(input)?;
        let seed = get_u64(input)?;
        let ring = R::read_params(input)?;
        let cap = get_usize(input)?;
        if cap > 64 {
            return Err(Error::Format(format!("implausible truncation degree {cap}")));
        }
        let layout = match get_u8(input)? {
            0 => Layout::Plain,
            1 => Layout::Split,
            2 => Layout::TwoCopy,
            x => return Err(Error::Format(format!("unknown layout {x}"))),
        };
        let target = match get_u8(input)? {
            0 => Target::Top,
            1 => Target::Graded(get_usize(input)?),
            x => return Err(Error::Format(format!("unknown target {x}"))),
        };
        let weights = match get_u8(input)? {
            0 => EdgeWeights::Unit,
            1 => EdgeWeights::Prf(get_u64(input)?),
            x => return Err(Error::Format(format!("unknown edge weights {x}"))),
        };
        let strict = get_u8(input)? != 0;
        let m = get_count(input, 8)?;
        let mut graph = DirectedGraph::new(n);
        for _ in 0..m {
            let u = get_usize(input)?;
            let v = get_usize(input)?;
            if !graph.add_edge(u, v).map_err(|e| Error::Format(e.to_string()))? {
                return Err(Error::Format("duplicate edge".into()));
            }
        }
        let inner = inner_graph(&graph, layout);
        let nc = get_count(input, 5)?;
        if nc != inner.n() {
            return Err(Error::Format(format!("{nc} codes for {} coded vertices", inner.n())));
        }
        let mut codes = Vec::with_capacity(nc);
        for _ in 0..nc {
            let graded = get_u8(input)? != 0;
            let degree = get_count(input, dims as usize)?;
            let mut factors = Vec::with_capacity(degree);
            for _ in 0..degree {
                let entries = (0..dims).map(|_| ring.read_elem(input)).collect::<Result<Vec<_>>>()?;
                factors.push(CodeVector::new(entries));
            }
            codes.push(VertexCode {
                blade: Blade::from_factors(dims, factors)?,
                graded,
            });
        }
        let nn = inner.n();
        let mut read = |count: usize| -> Result<Vec<_>> {
            (0..count).map(|_| get_poly(&ring, input, dims, cap)).collect()
        };
        let q = read(nn * nn)?;
        let s = read(nn)?;
        let f = read(nn)?;
        let z = read(1)?.pop().expect("one polynomial");
        if !input.is_empty() {
            return Err(Error::Format(format!("{} trailing bytes", input.len())));
        }
        let bp = Blueprint {
            mode: if R::TAG == MODE_RANDOMIZED {
                Mode::Randomized
            } else {
                Mode::Deterministic
            },
            k,
            dims,
            l_max,
            seed,
            cap,
            layout,
            target,
            weights,
            strict,
            graph,
            codes,
        };
        Ok(KPathOracle { ring, bp, inner, q, s, f, z })
    }
}
