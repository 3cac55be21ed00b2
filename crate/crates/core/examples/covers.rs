//! Independent and dominating box covers of the inner region.
use knnrgg::local_events::{build_covers, inner_region};

fn main() -> knnrgg::Result<()> {
    let (n, m) = (65536.0, 3);
    let inner = inner_region(n, m)?.expect("inner region is non-empty at this n");
    let (c1, c2) = build_covers(n, m)?;
    println!("inner region: origin ({:.2}, {:.2}), side {:.2}", inner.origin_x, inner.origin_y, inner.side);
    println!("independent cover: {} boxes", c1.len());
    println!("dominating cover:  {} boxes", c2.len());
    let b = &c2.boxes[0];
    println!("first dominating box centred at ({:.2}, {:.2}), side {:.2}", b.center.x, b.center.y, b.side());
    Ok(())
}
