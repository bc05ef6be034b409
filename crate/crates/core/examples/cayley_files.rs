//! Reading and writing the two text formats.

use commprob::catalog::{emit_permutations, parse_permutations, read_cayley, write_cayley};
use commprob::FiniteGroup;

fn main() -> commprob::Result<()> {
    let file = parse_permutations("degree 4\n# S4\n(1 2)\n(1 2 3 4)\n")?;
    let g = FiniteGroup::close_generators(file.degree, &file.perms, 100)?;
    print!("{}", emit_permutations(&file));
    println!("order {}, digest {}", g.order(), g.digest());

    let table = write_cayley(&g);
    let back = read_cayley(&table)?;
    assert_eq!(back.digest(), g.digest());
    println!("table: {} lines, digest preserved", table.lines().count());

    match read_cayley("2\n0 1\n1 1\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("broken table rejected: {e}"),
    }
    Ok(())
}
