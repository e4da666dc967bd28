"""Built-in config documents printed by the preset command"""

LEGENDRE = """\
# seed 1 with h = 1 reproduces the Legendre polynomials up to scale
space:
  a: -1.0
  b: 1.0
  weight: "1"
  quad_tol: 1.0e-11
build:
  seed: "1"
  N: 6
  x0: 0.0
  h: "1"
  normalize: false
output:
  sample_points: 201
"""

EXP_SEED = """\
space:
  a: -1.0
  b: 1.0
  weight: "1"
  quad_tol: 1.0e-11
build:
  seed: "exp(x)"
  N: 4
  x0: 0.0
  h: "1"
  normalize: false
output:
  sample_points: 201
"""

NONCONSTANT_H = """\
space:
  a: -1.0
  b: 1.0
  weight: "1"
  quad_tol: 1.0e-11
build:
  seed: "1 + x^2/4"
  N: 4
  x0: 0.0
  h:
    - "1 + x^2/2"
    - "2 + sin(x)"
    - "3/2 + cos(x)"
  normalize: false
output:
  sample_points: 201
"""

PRESETS = {
    "legendre": LEGENDRE,
    "exp-seed": EXP_SEED,
    "nonconstant-h": NONCONSTANT_H,
}
