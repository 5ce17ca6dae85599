use blowup_core::algebra::{Ideal, Polynomial, VarContext};
use blowup_core::blowup::{center_images, restrict_sequence, MarkedIdeal};
use blowup_core::drivers::*;
use blowup_core::geometry::{is_smooth, Chart};
use blowup_core::Error;

fn surface(eq: &str) -> Chart {
    Chart::parse_root(&["x", "y", "z"], eq).unwrap()
}

fn curve(eq: &str) -> Chart {
    Chart::parse_root(&["x", "y"], eq).unwrap()
}

fn ideal_on(c: &Chart, gens: &[&str]) -> Ideal {
    Ideal::from_gens(gens.iter().map(|g| c.poly(g).unwrap()).collect())
}

fn centers(r: &DriverReport) -> Vec<(usize, String, String)> {
    r.centers().into_iter().map(|(k, id, i)| (k, id, i.canonical())).collect()
}

#[test]
fn whitney_floc_is_the_line() {
    let r = floc_surface(&surface("y^2 + x*z^2")).unwrap();
    let cs = r.centers();
    assert_eq!(cs.len(), 1);
    let c = r.tree.root();
    assert!(cs[0].2.equals(&ideal_on(c, &["y", "z"])));
    assert!(r.tree.leaves().iter().all(|l| is_smooth(l).is_smooth()));
    assert_eq!(r.checks.centers_over_singular_locus, Some(true));
}

#[test]
fn whitney_fvar_handles_the_line_before_the_orbifold_point() {
    let r = fvar_surface(&surface("y^2 + x*z^2")).unwrap();
    let cs = centers(&r);
    assert_eq!(cs.len(), 3);
    assert_eq!(cs[1], (2, "root/x".into(), "(y1, z1)".into()));
    assert_eq!(cs[2], (3, "root/z".into(), "(x1, y1, z1)".into()));
    assert!(r.centers_log.iter().all(|e| e.tag == Tag::Companion));
}

#[test]
fn exam2_over_the_x_chart() {
    let c = surface("y^2 + x*z^3");
    let f = floc_surface(&c).unwrap();
    let over_x = |r: &DriverReport| -> Vec<(usize, String, String)> {
        centers(r).into_iter().filter(|(_, id, _)| id == "root" || id.starts_with("root/x")).collect()
    };
    let chain = over_x(&f);
    assert_eq!(
        chain,
        vec![
            (1, "root".into(), "(x, y, z)".into()),
            (2, "root/x".into(), "(y1, z1)".into()),
            (3, "root/x/z".into(), "(x2, y2, z2)".into()),
            (4, "root/x/z/z".into(), "(x3, y3)".into()),
            (5, "root/x/z/x".into(), "(x3, y3, z3)".into()),
        ]
    );
    let y1 = f.tree.chart("root/x");
    assert_eq!(y1.equation, y1.poly("y1^2 + x1^2*z1^3").unwrap());
    let y2 = f.tree.chart("root/x/z");
    assert_eq!(y2.equation, y2.poly("y2^2 + x2^2*z2").unwrap());
    let v = fvar_surface(&c).unwrap();
    let chain = over_x(&v);
    assert_eq!(chain.len(), 3);
    assert_eq!(chain[2].2, "(x2, y2)");
}

#[test]
fn marked_descent_from_three_space() {
    let ctx = VarContext::new(&["x", "y", "z"]).unwrap();
    let i = Ideal::from_gens(vec![Polynomial::parse("y^2 + x*z^3", &ctx).unwrap()]);
    let r = bm_resolve_marked(&MarkedIdeal::new(i, 2)).unwrap();
    let over_x: Vec<String> = centers(&r)
        .into_iter()
        .filter(|(_, id, _)| id == "root" || id.starts_with("root/x"))
        .map(|c| c.2)
        .collect();
    assert_eq!(over_x, vec!["(x, y, z)", "(y1, z1)", "(x2, y2)"]);
}

#[test]
fn marked_plane_chain() {
    let ctx = VarContext::new(&["x", "z"]).unwrap();
    let i = Ideal::from_gens(vec![Polynomial::parse("z^6", &ctx).unwrap(), Polynomial::parse("x*z^3", &ctx).unwrap()]);
    let r = bm_resolve_marked(&MarkedIdeal::new(i, 2)).unwrap();
    let path = ["root", "root/x", "root/x/z", "root/x/z/x"];
    let expect = ["(x*z^3, z^6)", "(x1^2*z1^3)", "(x2^2*z2)", "(z3)"];
    for (id, e) in path.iter().zip(expect) {
        let c = r.tree.chart(id);
        let want = Ideal::new(&c.ctx, parse_gens(e, c)).unwrap();
        assert!(r.marked[*id].ideal.equals(&want), "{id}: {}", r.marked[*id].ideal.canonical());
    }
}

fn parse_gens(text: &str, c: &Chart) -> Vec<Polynomial> {
    text.trim_matches(|ch| ch == '(' || ch == ')').split(", ").map(|g| c.poly(g).unwrap()).collect()
}

#[test]
fn marked_low_order_is_empty() {
    let ctx = VarContext::new(&["x", "z"]).unwrap();
    let i = Ideal::from_gens(vec![Polynomial::parse("z", &ctx).unwrap()]);
    assert_eq!(bm_resolve_marked(&MarkedIdeal::new(i, 2)).unwrap().length(), 0);
}

#[test]
fn curves() {
    // cusp: x-chart y1^2 - x1, smooth
    assert_eq!(resolve_curve(&curve("y^2 - x^3")).unwrap().length(), 1);
    // node: x-chart y1^2 - (x1 + 1)
    assert_eq!(resolve_curve(&curve("y^2 - x^2*(x + 1)")).unwrap().length(), 1);
    // tacnode: x-chart y1^2 - x1^2 is a node, one more blow-up
    assert_eq!(resolve_curve(&curve("y^2 - x^4")).unwrap().length(), 2);
    // ordinary triple point: tangent cone x^3 - y^3 has three distinct lines
    assert_eq!(resolve_curve(&curve("x^3 - y^3 + x^4")).unwrap().length(), 1);
}

#[test]
fn two_cusps_blow_up_together() {
    // cusps at (0, 0) and (1, 0), nothing else singular
    let r = resolve_curve(&curve("y^2 - x^3*(x - 1)^3")).unwrap();
    assert_eq!(r.length(), 1);
    let first: Vec<&LogEntry> = r.centers_log.iter().filter(|e| e.step == 1).collect();
    assert_eq!(first.len(), 2, "{}", r.trace());
}

#[test]
fn irrational_singular_point_is_reported() {
    let err = resolve_curve(&curve("(y^2 - x^3)*((y - 1)^2 - (x^2 - 2)^3)"));
    assert!(matches!(err, Err(Error::IrrationalLocus(_))), "{err:?}");
}

#[test]
fn functoriality_on_principal_opens() {
    for eq in ["y^2 + x*z^2", "y^2 + x*z^3", "y^2 - x^2*(x + 1)"] {
        let c = surface(eq);
        let f = floc_surface(&c).unwrap();
        for h in ["x", "x - 1", "y + 1"] {
            let hp = c.poly(h).unwrap();
            let restricted = center_images(&restrict_sequence(&f.tree, &hp));
            let local = center_images(&floc_surface(&c.localized(&hp)).unwrap().tree);
            assert_eq!(restricted, local, "{eq} on D({h})");
        }
    }
}

#[test]
fn deterministic_json() {
    let c = surface("y^2 + x*z^3");
    assert_eq!(floc_surface(&c).unwrap().to_json_string(), floc_surface(&c).unwrap().to_json_string());
}

#[test]
fn pair_with_empty_subscheme_is_floc() {
    let c = surface("y^2 + x*z^2");
    let r = resolve_pair(&c, &Ideal::unit(&c.ctx)).unwrap();
    assert_eq!(centers(&r), centers(&floc_surface(&c).unwrap()));
}

#[test]
fn smooth_inputs_are_untouched() {
    assert_eq!(fvar_surface(&surface("z - x*y")).unwrap().length(), 0);
    assert_eq!(floc_surface(&surface("z - x*y")).unwrap().length(), 0);
}
