use std::sync::Arc;

use crate::algebra::{Polynomial, VarContext};

/// Parent variables expressed as polynomials in child variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    parent: Arc<VarContext>,
    child: Arc<VarContext>,
    images: Vec<Polynomial>,
}

impl Substitution {
    pub fn new(parent: &Arc<VarContext>, child: &Arc<VarContext>, images: Vec<Polynomial>) -> Self {
        assert_eq!(images.len(), parent.len(), "substitution must be total on parent variables");
        assert!(images.iter().all(|p| p.ctx().compatible(child)));
        Substitution { parent: parent.clone(), child: child.clone(), images }
    }

    pub fn identity(ctx: &Arc<VarContext>) -> Self {
        let images = (0..ctx.len()).map(|v| Polynomial::var(ctx, v)).collect();
        Self::new(ctx, ctx, images)
    }

    pub fn parent_ctx(&self) -> &Arc<VarContext> {
        &self.parent
    }

    pub fn child_ctx(&self) -> &Arc<VarContext> {
        &self.child
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image_of(&self, parent_var: usize) -> &Polynomial {
        &self.images[parent_var]
    }

    /// Pulls a parent polynomial back to the child: `f ∘ self`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        assert!(f.ctx().compatible(&self.parent), "polynomial lives in a different chart");
        f.compose(&self.images, &self.child)
    }

    /// `self ∘ next`: parent variables in terms of the grandchild.
    pub fn then(&self, next: &Substitution) -> Substitution {
        assert!(self.child.compatible(&next.parent));
        let images = self.images.iter().map(|p| next.apply(p)).collect();
        Substitution::new(&self.parent, &next.child, images)
    }

    pub fn is_identity(&self) -> bool {
        self.parent.compatible(&self.child)
            && self.images.iter().enumerate().all(|(v, p)| *p == Polynomial::var(&self.child, v))
    }
}

/// A locally principal boundary component with its birth step.
#[derive(Clone, Debug, PartialEq)]
pub struct Divisor {
    pub equation: Polynomial,
    pub history: usize,
}

impl Divisor {
    /// The chart variable cutting out the divisor, if it is a coordinate.
    pub fn as_variable(&self) -> Option<usize> {
        let vars = self.equation.variables();
        if vars.len() == 1 && self.equation == Polynomial::var(self.equation.ctx(), vars[0]) {
            Some(vars[0])
        } else {
            None
        }
    }
}

/// Affine coordinate patch of a blow-up tree. An `equation` of zero denotes
/// the ambient affine space itself. `inverted` lists the elements inverted by
/// a principal localization (empty for a full affine chart).
#[derive(Clone, Debug)]
pub struct Chart {
    pub id: String,
    pub ctx: Arc<VarContext>,
    pub equation: Polynomial,
    pub ambient_relations: Vec<Polynomial>,
    pub exceptional: Vec<Divisor>,
    pub parent: Option<(String, Substitution)>,
    pub birth_step: usize,
    pub inverted: Vec<Polynomial>,
    /// Variable cutting out the exceptional divisor of the blow-up that
    /// produced this chart.
    pub exceptional_var: Option<usize>,
}

impl Chart {
    pub fn root(id: &str, equation: Polynomial) -> Self {
        Chart {
            id: id.to_string(),
            ctx: equation.ctx().clone(),
            equation,
            ambient_relations: Vec::new(),
            exceptional: Vec::new(),
            parent: None,
            birth_step: 0,
            inverted: Vec::new(),
            exceptional_var: None,
        }
    }

    /// Root chart for a problem given as variable names and equation text.
    pub fn parse_root(vars: &[&str], equation: &str) -> crate::Result<Self> {
        let ctx = VarContext::new(vars)?;
        Ok(Self::root("root", Polynomial::parse(equation, &ctx)?))
    }

    pub fn is_ambient(&self) -> bool {
        self.equation.is_zero()
    }

    pub fn var(&self, name: &str) -> crate::Result<Polynomial> {
        Polynomial::var_named(&self.ctx, name)
    }

    pub fn poly(&self, text: &str) -> crate::Result<Polynomial> {
        Polynomial::parse(text, &self.ctx)
    }

    /// Copy of the chart restricted to `D(h)`.
    pub fn localized(&self, h: &Polynomial) -> Chart {
        let mut c = self.clone();
        if !(h.is_constant() && !h.is_zero()) && !c.inverted.contains(h) {
            c.inverted.push(h.clone());
        }
        c
    }

    /// Product of the inverted elements (1 when none).
    pub fn inverted_product(&self) -> Polynomial {
        self.inverted.iter().fold(Polynomial::one(&self.ctx), |acc, h| &acc * h)
    }

    /// Whether a point of this chart lies in its localization.
    pub fn contains_point(&self, p: &crate::algebra::Point) -> bool {
        let v = p.values();
        self.inverted.iter().all(|h| !num_traits::Zero::is_zero(&h.eval(&v)))
    }
}
