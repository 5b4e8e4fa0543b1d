//! Glues triangles one side pair at a time and follows the potential
//! function along the way.
//!
//! ```bash
//! cargo run --example gluing_story
//! ```

use twogirth::gluing::story::{
    disjoint_tetrahedra_story, pillow_story, tetrahedron_story, trace_story, GluingStory,
};
use twogirth::gluing::PotentialParams;

fn show(name: &str, story: &GluingStory, params: &PotentialParams) -> twogirth::error::Result<()> {
    let t = trace_story(story, params)?;
    println!("{name} (f = {}, delta = {}):", story.f, params.delta);
    for s in &t.steps {
        println!(
            "  step {:>2} {:?}-{:?} flip={:<5} type {:?} near={:<5} F {:.3} -> {:.3}  loops {:?}",
            s.step, s.a, s.b, s.flip, s.move_type, s.near, s.f_before, s.f_after, s.loops
        );
    }
    println!(
        "  closed={} surface={} V={} H={} N={}  V <= (1+delta)N + H: {}  violations {}",
        t.closed,
        t.surface,
        t.v,
        t.h,
        t.n_near,
        t.nearmoves_holds(),
        t.violations.len()
    );
    Ok(())
}

fn main() -> twogirth::error::Result<()> {
    let params = PotentialParams::new(0.5)?;
    show("pillow", &pillow_story(), &params)?;
    show("tetrahedron", &tetrahedron_story(), &params)?;
    show("two tetrahedra", &disjoint_tetrahedra_story(8)?, &params)?;

    // Stories are plain JSON.
    println!("\n{}", tetrahedron_story().to_json());
    Ok(())
}
