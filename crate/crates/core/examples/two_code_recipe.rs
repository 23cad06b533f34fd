//! Single operators that switch between the even and odd checksum codes.
//! Their products reproduce hops on the even code.

use fermion_codes::codes::{make_checksum, Flavor};
use fermion_codes::transform::{transform_pair, TransformOptions, TwoCodeTransformer};

fn main() -> fermion_codes::Result<()> {
    let even = make_checksum(4, Flavor::Even);
    let odd = make_checksum(4, Flavor::Odd);
    let opts = TransformOptions::default();
    let two = TwoCodeTransformer::new(&even, &odd, opts)?;
    for (i, j) in [(1, 2), (2, 4), (4, 1)] {
        let product = two.single(i, true)?.mul(&two.single(j, false)?)?;
        let pair = transform_pair(&even, i, j, opts)?;
        println!("c†_{i} c_{j}: {} strings, product vs pair: max difference {:.1e}", product.len(), product.max_difference(&pair));
        print!("{}", product.to_text());
    }
    Ok(())
}
