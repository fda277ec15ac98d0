#pragma once

// Reference samples and printed tables used as test oracles.

#include <limits>
#include <utility>
#include <vector>

namespace fixtures {

// 20 draws from 0.8 r(nu=-3) + 0.2 N(10,1), location problem
inline const std::vector<double> location_sample = {
    -1.7827, -1.1761, -1.0597, -0.3236, -0.2340, 0.4706, 0.4712, 0.5435, 0.6309, 0.7533,
    0.8020,  0.9237,  1.1394,  1.4373,  1.5351,  1.6941, 8.6501, 10.7254, 12.7694, 13.0349};

// printed intervals y_j -/+ sqrt(3); the first is not centred on the first observation
inline const std::vector<std::pair<double, double>> location_intervals = {
    {-3.4607, 0.0033}, {-2.9081, 0.5559}, {-2.7917, 0.6723}, {-2.0556, 1.4084}, {-1.9660, 1.4980},
    {-1.2614, 2.2026}, {-1.2608, 2.2032}, {-1.1885, 2.2755}, {-1.1011, 2.3629}, {-0.9787, 2.4853},
    {-0.9300, 2.5340}, {-0.8083, 2.6557}, {-0.5926, 2.8714}, {-0.2947, 3.1693}, {-0.1969, 3.2671},
    {-0.0379, 3.4261}, {6.9180, 10.3821}, {8.9933, 12.4574}, {11.0373, 14.5014}, {11.3028, 14.7669}};

// printed elementary cells of the location partition (38)
inline const std::vector<std::pair<double, double>> location_cells = {
    {-3.4607, -2.9081}, {-2.9081, -2.7917}, {-2.7917, -2.0556}, {-2.0556, -1.9660}, {-1.9660, -1.2614},
    {-1.2614, -1.2608}, {-1.2608, -1.1885}, {-1.1885, -1.1011}, {-1.1011, -0.9787}, {-0.9787, -0.9300},
    {-0.9300, -0.8083}, {-0.8083, -0.5926}, {-0.5926, -0.2947}, {-0.2947, -0.1969}, {-0.1969, -0.0379},
    {-0.0379, 0.0033},  {0.0033, 0.5559},   {0.5559, 0.6723},   {0.6723, 1.4084},   {1.4084, 1.4980},
    {1.4980, 2.2026},   {2.2026, 2.2032},   {2.2032, 2.2755},   {2.2755, 2.3629},   {2.3629, 2.4853},
    {2.4853, 2.5340},   {2.5340, 2.6557},   {2.6557, 2.8714},   {2.8714, 3.1693},   {3.1693, 3.2671},
    {3.2671, 3.4261},   {6.9180, 8.9933},   {8.9933, 10.3821},  {10.3821, 11.0373}, {11.0373, 11.3028},
    {11.3028, 12.4574}, {12.4574, 14.5014}, {14.5014, 14.7669}};

// beta grid and printed location estimates (3 dp)
inline const std::vector<double> location_betas = {1.4, 1.3, 1.2, 1.0, 0.9};
inline const std::vector<double> location_estimates = {0.767, 0.765, 0.763, 0.757, 0.753};

// 20 draws from 0.8 r(nu=-3) + 0.2 N(0,25), scale problem with mu = 0
inline const std::vector<double> scale_sample = {
    0.0168,  0.0593,  -0.1015, -0.4325, -0.4620, -0.4669, -0.5620, 0.6270,  -0.6851, -0.7338,
    0.7675,  -0.7915, 0.8283,  -0.8574, 1.1092,  -1.2844, -1.3149, 1.8781,  -3.2350, 4.3409};

// printed lower ends y_j^2/3 of K_j with the number of printed decimals
inline const std::vector<std::pair<double, int>> scale_lower_ends = {
    {0.00009, 5}, {0.00117, 5}, {0.00343, 5}, {0.06235, 5}, {0.07116, 5}, {0.07268, 5}, {0.1052, 4},
    {0.1310, 4},  {0.1564, 4},  {0.17951, 5}, {0.1963, 4},  {0.2088, 4},  {0.2287, 4},  {0.2450, 4},
    {0.4101, 4},  {0.5499, 4},  {0.5764, 4},  {1.1758, 4},  {3.4886, 4},  {6.2811, 4}};

inline const std::vector<double> scale_estimates = {1.0217, 1.0026, 0.9828, 0.9408, 0.9184};

// Newcomb scale partition (printed lower ends, 23 cells; the last is unbounded)
inline const std::vector<double> newcomb_cell_lowers = {
    0.0064, 0.0886, 0.2098, 0.4566, 0.6990, 1.1103, 1.4739, 2.0497, 2.5345,  3.2748,  3.8808, 4.7856,
    5.5129, 6.5821, 7.4306, 8.6644, 13.6860, 14.8982, 16.6254, 23.3614, 27.1579, 113.703, 704.248};

struct NewcombFit {
    double beta, sigma2, ks;
};
inline const std::vector<NewcombFit> newcomb_fits = {
    {0.9, 36.23, 0.1540}, {1.0, 35.74, 0.1530}, {1.5, 32.13, 0.1451},
    {1.9, 29.12, 0.1375}, {2.0, 28.43, 0.1366}, {2.1, 27.78, 0.1373}};

} // namespace fixtures
