#pragma once

namespace vixsmile::bs {

/// Black-Scholes call on a forward underlying with zero rates.
/// log_forward and log_strike are natural logs; vol is per sqrt(year).
struct BsQuote {
    double log_forward = 0.0;
    double log_strike = 0.0;
    double maturity = 1.0;
    double vol = 0.0;

    void validate() const;
};

/// e^x N(d+) - e^k N(d-); intrinsic value when vol == 0.
double bs_price(const BsQuote& q);

/// dPrice/dvol = e^x N'(d+) sqrt(T).
double bs_vega(const BsQuote& q);

/// Inverts bs_price for the volatility. The price must lie strictly inside the
/// no-arbitrage bracket (max(e^x - e^k, 0), e^x); otherwise OutOfBounds is thrown.
double implied_vol(double price, double log_forward, double log_strike, double maturity);

/// implied_vol with log_strike = log_forward = ln(forward).
double atm_implied_vol(double price, double forward, double maturity);

}  // namespace vixsmile::bs
