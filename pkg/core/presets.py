from typing import Dict, Tuple

# Published grid of equilibria and welfare: (v, K) -> one entry per rho_high
# in TABLE1_RHO_HIGH, each entry (x_high, x_low, w_simple, w_nash).
TABLE1_RHO_HIGH: Tuple[float, ...] = (0.1, 0.3, 0.5)
TABLE1_V_VALUES: Tuple[float, ...] = (1.001, 1.01, 1.1, 1.5, 3.0, 10.0)
TABLE1_K_RANGE: Tuple[int, ...] = tuple(range(1, 8))

_Row = Tuple[float, float, float, float]

TABLE1: Dict[Tuple[float, int], Tuple[_Row, _Row, _Row]] = {
    (1.001, 1): ((0.094, 0.095, 1.264, 1.223), (0.252, 0.266, 1.265, 1.163), (0.402, 0.430, 1.265, 1.132)),
    (1.001, 2): ((0.125, 0.143, 1.544, 1.521), (0.344, 0.445, 1.544, 1.500), (0.609, 0.781, 1.544, 1.505)),
    (1.001, 3): ((1.000, 0.000, 1.681, 1.667), (0.500, 0.438, 1.682, 1.644), (0.688, 1.031, 1.682, 1.650)),
    (1.001, 4): ((2.000, 0.000, 1.763, 1.759), (1.000, 0.109, 1.764, 1.712), (0.750, 1.188, 1.764, 1.724)),
    (1.001, 5): ((3.000, 0.000, 1.817, 1.816), (2.000, 0.000, 1.817, 1.781), (1.000, 0.813, 1.818, 1.768)),
    (1.001, 6): ((4.000, 0.000, 1.855, 1.855), (4.000, 0.000, 1.855, 1.853), (3.000, 0.000, 1.855, 1.812)),
    (1.001, 7): ((5.000, 0.000, 1.882, 1.883), (5.000, 0.000, 1.883, 1.883), (4.000, 0.000, 1.883, 1.857)),
    (1.01, 1): ((0.109, 0.092, 1.266, 1.224), (0.264, 0.260, 1.268, 1.167), (0.410, 0.426, 1.271, 1.138)),
    (1.01, 2): ((0.500, 0.945, 1.545, 1.529), (0.500, 0.313, 1.548, 1.509), (0.625, 0.750, 1.551, 1.512)),
    (1.01, 3): ((1.000, 0.000, 1.683, 1.668), (1.000, 0.031, 1.686, 1.641), (0.750, 0.875, 1.690, 1.657)),
    (1.01, 4): ((2.000, 0.000, 1.765, 1.760), (2.000, 0.000, 1.768, 1.749), (2.000, 0.000, 1.772, 1.726)),
    (1.01, 5): ((4.000, 0.000, 1.819, 1.823), (3.000, 0.000, 1.822, 1.815), (3.000, 0.000, 1.826, 1.805)),
    (1.01, 6): ((5.000, 0.000, 1.856, 1.860), (4.000, 0.000, 1.860, 1.858), (4.000, 0.000, 1.864, 1.854)),
    (1.01, 7): ((6.000, 0.000, 1.884, 1.887), (5.000, 0.000, 1.888, 1.888), (5.000, 0.000, 1.891, 1.887)),
    (1.1, 1): ((0.258, 0.073, 1.277, 1.239), (0.381, 0.203, 1.302, 1.208), (0.504, 0.324, 1.328, 1.202)),
    (1.1, 2): ((1.000, 0.000, 1.559, 1.559), (1.000, 0.004, 1.590, 1.579), (1.000, 0.242, 1.621, 1.615)),
    (1.1, 3): ((2.000, 0.000, 1.698, 1.702), (2.000, 0.000, 1.732, 1.739), (2.000, 0.000, 1.765, 1.763)),
    (1.1, 4): ((3.000, 0.000, 1.781, 1.786), (3.000, 0.000, 1.816, 1.827), (3.000, 0.000, 1.851, 1.860)),
    (1.1, 5): ((4.000, 0.000, 1.835, 1.840), (4.000, 0.000, 1.871, 1.883), (4.000, 0.000, 1.908, 1.920)),
    (1.1, 6): ((5.000, 0.000, 1.873, 1.877), (5.000, 0.000, 1.910, 1.921), (5.000, 0.000, 1.947, 1.960)),
    (1.1, 7): ((6.000, 0.000, 1.901, 1.904), (6.000, 0.000, 1.938, 1.948), (6.000, 0.000, 1.976, 1.988)),
    (1.5, 1): ((0.883, 0.000, 1.328, 1.320), (0.895, 0.000, 1.454, 1.433), (0.914, 0.000, 1.580, 1.552)),
    (1.5, 2): ((1.000, 0.088, 1.621, 1.636), (1.094, 0.320, 1.775, 1.810), (1.328, 0.547, 1.930, 1.956)),
    (1.5, 3): ((2.000, 0.070, 1.765, 1.782), (2.000, 0.266, 1.933, 1.980), (2.000, 0.656, 2.102, 2.173)),
    (1.5, 4): ((3.000, 0.066, 1.851, 1.866), (3.000, 0.250, 2.028, 2.069), (3.000, 0.531, 2.204, 2.266)),
    (1.5, 5): ((4.000, 0.070, 1.908, 1.920), (4.000, 0.250, 2.089, 2.125), (4.000, 0.500, 2.271, 2.325)),
    (1.5, 6): ((5.000, 0.078, 1.947, 1.958), (5.000, 0.250, 2.133, 2.163), (5.000, 0.500, 2.318, 2.364)),
    (1.5, 7): ((6.000, 0.094, 1.976, 1.986), (6.000, 0.313, 2.164, 2.192), (6.000, 0.500, 2.352, 2.392)),
    (3.0, 1): ((1.000, 0.121, 1.517, 1.512), (1.000, 0.350, 2.023, 2.010), (1.000, 0.572, 2.529, 2.519)),
    (3.0, 2): ((2.000, 0.215, 1.852, 1.860), (2.000, 0.875, 2.470, 2.489), (2.000, 1.000, 3.087, 3.179)),
    (3.0, 3): ((3.000, 0.289, 2.017, 2.026), (3.000, 1.000, 2.690, 2.728), (3.000, 1.000, 3.362, 3.449)),
    (3.0, 4): ((4.000, 0.352, 2.116, 2.124), (4.000, 1.000, 2.821, 2.862), (4.000, 2.000, 3.526, 3.573)),
    (3.0, 5): ((5.000, 0.406, 2.180, 2.187), (5.000, 1.000, 2.907, 2.945), (5.000, 2.000, 3.634, 3.685)),
    (3.0, 6): ((6.000, 0.469, 2.225, 2.231), (6.000, 1.250, 2.967, 2.993), (6.000, 2.000, 3.709, 3.757)),
    (3.0, 7): ((6.875, 0.531, 2.258, 2.264), (6.875, 1.500, 3.011, 3.035), (6.875, 2.750, 3.764, 3.802)),
    (10.0, 1): ((1.000, 0.508, 2.402, 2.342), (1.000, 1.000, 4.678, 4.889), (1.000, 1.000, 6.953, 7.600)),
    (10.0, 2): ((2.000, 1.000, 2.933, 2.915), (2.000, 1.281, 5.712, 6.015), (2.000, 2.000, 8.490, 8.785)),
    (10.0, 3): ((3.000, 1.000, 3.194, 3.232), (3.000, 2.000, 6.220, 6.413), (3.000, 2.078, 9.246, 9.712)),
    (10.0, 4): ((4.000, 1.000, 3.350, 3.396), (4.000, 2.000, 6.523, 6.726), (4.000, 3.000, 9.697, 10.019)),
    (10.0, 5): ((5.000, 1.156, 3.452, 3.484), (5.000, 3.000, 6.722, 6.809), (5.000, 3.688, 9.993, 10.212)),
    (10.0, 6): ((6.000, 1.438, 3.524, 3.541), (6.000, 3.000, 6.862, 6.960), (6.000, 4.000, 10.199, 10.404)),
    (10.0, 7): ((7.000, 1.688, 3.576, 3.587), (7.000, 3.000, 6.963, 7.058), (7.000, 4.750, 10.351, 10.493)),
}

# Published K=1 comparison of SIMPLE against equilibrium: (x_low, r, v, w_simple / w_nash).
# The first row fixes v and solves for x_low; every other row takes v at the
# value that makes x_low an interior equilibrium.
TABLE2_FIXED_V_ROW: Tuple[float, float, float, float] = (0.430, 1.0, 1.001, 1.117491166)
TABLE2_ROWS: Tuple[Tuple[float, float, float, float], ...] = (
    (0.3, 10.0, 6.171953564, 1.003290867),
    (0.4, 10.0, 8.328930557, 1.01088794),
    (0.5, 10.0, 10.76816087, 1.018342694),
    (0.6, 10.0, 13.47584871, 1.025452035),
    (0.7, 10.0, 16.45401694, 1.032211033),
    (0.8, 10.0, 19.71625006, 1.038664643),
    (0.9, 10.0, 23.28395803, 1.04486198),
    (0.1, 1000.0, 179.2345456, 1.007484894),
    (0.2, 1000.0, 374.2197676, 1.014518933),
    (0.3, 1000.0, 586.4670089, 1.02102172),
    (0.4, 1000.0, 817.6380872, 1.027133691),
    (0.5, 1000.0, 1069.560558, 1.032951674),
    (0.6, 1000.0, 1344.244542, 1.038544177),
    (0.7, 1000.0, 1643.901282, 1.043960656),
    (0.8, 1000.0, 1970.9636, 1.049237358),
    (0.9, 1000.0, 2328.108456, 1.054401137),
)

# Low-type equilibrium strategy against K at v = 1.5, one series per ratio r.
FIGURE1_V: float = 1.5
FIGURE1_K_RANGE: Tuple[int, ...] = tuple(range(1, 8))
FIGURE1_SERIES: Dict[str, Tuple[float, Tuple[float, ...]]] = {
    "x_low_r9": (9.0, (0.0, 0.087891, 0.070312, 0.066406, 0.070312, 0.078125, 0.09375)),
    "x_low_r7_3": (7.0 / 3.0, (0.0, 0.32031, 0.26562, 0.25, 0.25, 0.25, 0.3125)),
    "x_low_r1": (1.0, (0.0, 0.54688, 0.65625, 0.53125, 0.5, 0.5, 0.5)),
}
