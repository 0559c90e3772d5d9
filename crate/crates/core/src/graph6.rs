//! graph6 encoding, as produced by nauty's `geng` and `showg`.
//!
//! A record is `N(n)` followed by the upper triangle of the adjacency matrix
//! in column-major order, `(0,1), (0,2), (1,2), (0,3), ...`, packed six bits
//! per byte (most significant first) with each byte offset by 63. Only the
//! 1-byte and 4-byte forms of `N(n)` are supported.

use thiserror::Error;

use crate::graph::Graph;

/// Largest vertex count expressible with the 4-byte `N(n)` form.
pub const MAX_ORDER: usize = 258_047;

pub const HEADER: &[u8] = b">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("byte {byte:#04x} at offset {offset} is outside 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("truncated or malformed size field at offset {offset}")]
    BadSize { offset: usize },
    #[error("expected {expected} bytes of edge data, found {found} (offset {offset})")]
    Length {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("nonzero padding bits in final byte at offset {offset}")]
    Padding { offset: usize },
    #[error("graph order {0} exceeds the supported maximum {MAX_ORDER}")]
    UnsupportedSize(usize),
}

fn data_bytes(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(line: &[u8]) -> Result<Graph, Graph6Error> {
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let line = line.strip_suffix(b"\n").unwrap_or(line);
    let line = line.strip_suffix(b"\r").unwrap_or(line);
    if let Some((offset, &byte)) = line
        .iter()
        .enumerate()
        .find(|(_, &b)| !(63..=126).contains(&b))
    {
        return Err(Graph6Error::InvalidByte { offset, byte });
    }

    let (n, start) = match line {
        [] => return Err(Graph6Error::BadSize { offset: 0 }),
        [126, 126, ..] => return Err(Graph6Error::UnsupportedSize(usize::MAX)),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Graph6Error::BadSize { offset: line.len() });
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            if n < 63 {
                return Err(Graph6Error::BadSize { offset: 1 });
            }
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };

    let body = &line[start..];
    let expected = data_bytes(n);
    if body.len() != expected {
        return Err(Graph6Error::Length {
            offset: start + body.len().min(expected),
            expected,
            found: body.len(),
        });
    }

    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = body[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(u, v).expect("indices in range by construction");
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let last = body[bit / 6] - 63;
        if last & ((1 << (6 - bit % 6)) - 1) != 0 {
            return Err(Graph6Error::Padding {
                offset: start + bit / 6,
            });
        }
    }
    Ok(g)
}

/// Canonical graph6 record (no header, no newline).
pub fn to_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + data_bytes(n));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= MAX_ORDER {
        out.push(126);
        out.extend([12, 6, 0].map(|shift| ((n >> shift) & 0x3f) as u8 + 63));
    } else {
        return Err(Graph6Error::UnsupportedSize(n));
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k3() -> Graph {
        Graph::from_edge_list(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn small_records() {
        assert_eq!(to_graph6(&k3()).unwrap(), "Bw");
        assert_eq!(parse_graph6(b"Bw").unwrap(), k3());
        assert_eq!(parse_graph6(b"B?").unwrap(), Graph::empty(3));
        assert_eq!(to_graph6(&Graph::empty(1)).unwrap(), "@");
        assert_eq!(to_graph6(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(parse_graph6(b"?").unwrap().n(), 0);
        assert_eq!(parse_graph6(b">>graph6<<Bw\n").unwrap(), k3());
    }

    #[test]
    fn known_nauty_records() {
        // Path 0-1-2-3: bits 101001.
        let p4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(to_graph6(&p4).unwrap(), "Ch");
        // K4 has all six bits set.
        let k4 =
            Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(to_graph6(&k4).unwrap(), "C~");
    }

    #[test]
    fn large_order_form() {
        let g = Graph::from_edge_list(100, &[(0, 99), (5, 6)]).unwrap();
        let s = to_graph6(&g).unwrap();
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 63 + 1, 63 + 36]);
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
        assert_eq!(
            to_graph6(&Graph::empty(MAX_ORDER + 1)),
            Err(Graph6Error::UnsupportedSize(MAX_ORDER + 1))
        );
    }

    #[test]
    fn malformed_records() {
        assert_eq!(
            parse_graph6(b"B w"),
            Err(Graph6Error::InvalidByte {
                offset: 1,
                byte: b' '
            })
        );
        assert!(matches!(
            parse_graph6(b"Bww"),
            Err(Graph6Error::Length { .. })
        ));
        assert!(matches!(
            parse_graph6(b"C"),
            Err(Graph6Error::Length { .. })
        ));
        assert!(matches!(
            parse_graph6(b""),
            Err(Graph6Error::BadSize { .. })
        ));
        assert!(matches!(
            parse_graph6(b"~??"),
            Err(Graph6Error::BadSize { .. })
        ));
        // n = 3 uses 3 of 6 bits; the low bits must be zero.
        assert!(matches!(
            parse_graph6(b"B@"),
            Err(Graph6Error::Padding { offset: 1 })
        ));
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..80, seed in any::<u64>()) {
            let mut edges = Vec::new();
            let mut state = seed | 1;
            for v in 1..n {
                for u in 0..v {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state % 3 == 0 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edge_list(n, &edges).unwrap();
            let record = to_graph6(&g).unwrap();
            let back = parse_graph6(record.as_bytes()).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(to_graph6(&back).unwrap(), record);
        }
    }
}
