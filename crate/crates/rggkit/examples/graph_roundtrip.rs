//! The graph dump format round-trips exactly: floats are written with 17
//! significant digits, so `write_graph` followed by `read_graph` returns a
//! bit-identical graph. The same format feeds the `rggkit search` command.
//!
//! ```bash
//! cargo run --release --example graph_roundtrip
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rggkit::geometry::ConvexBody;
use rggkit::pointprocess::{build_rgg, read_graph, sample_poisson, write_graph};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(123);
    let pts = sample_poisson(&ConvexBody::cube(4), 60.0, &mut rng).unwrap();
    let g = build_rgg(pts, 0.4);

    let mut buf = Vec::new();
    write_graph(&g, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    println!("dump is {} bytes for n = {}, m = {}", text.len(), g.n(), g.m());
    println!("first lines:");
    for line in text.lines().take(3) {
        println!("  {line}");
    }

    let back = read_graph(text.as_bytes()).unwrap();
    assert_eq!(back, g, "round trip is exact");

    // Write again: byte-identical the second time too.
    let mut buf2 = Vec::new();
    write_graph(&back, &mut buf2).unwrap();
    assert_eq!(text.as_bytes(), &buf2[..]);
    println!("round trip ok; feed such a file to `rggkit search --graph FILE`");

    // Parse errors carry line numbers: corrupt the first coordinate line.
    let mut lines: Vec<&str> = text.lines().collect();
    lines[1] = "not a coordinate line";
    let broken = lines.join("\n");
    match read_graph(broken.as_bytes()) {
        Err(e) => println!("broken dump rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
