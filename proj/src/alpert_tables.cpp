// SPDX-License-Identifier: Apache-2.0

#include "debye/quadrature.hpp"

namespace debye
{

// Symmetric log-singular end corrections: nodes v_k (units of h) and weights u_k.
// Generated offline in 60-digit arithmetic from the moment conditions.

const AlpertRule &alpert_order8()
{
  static const AlpertRule rule{3,
    {
      0.0288220793951543263107,
      0.252795581546182144382,
      0.666644650470596662886,
      1.20736451697580759823,
      1.79263548302419240177,
      2.33335534952940333711,
      2.74720441845381785562,
      2.97117792060484567369,
    },
    {
      0.0996352177437533468643,
      0.329966918322835974298,
      0.509028137691970202609,
      0.527436563870896531153,
      0.652132279252125036905,
      0.500833152511903251852,
      -0.165597503230179065858,
      0.0465652338366947221772,
    }};
  return rule;
}

const AlpertRule &alpert_order16()
{
  static const AlpertRule rule{7,
    {
      0.0168534566473108981431,
      0.150708824937268972725,
      0.413275574780757396005,
      0.794463413230420637162,
      1.27962350542724075625,
      1.85011142110900823005,
      2.48400362960938171327,
      3.15694000884653789302,
      3.84305999115346210698,
      4.51599637039061828673,
      5.14988857889099176995,
      5.72037649457275924375,
      6.20553658676957936284,
      6.58672442521924260399,
      6.84929117506273102728,
      6.98314654335268910186,
    },
    {
      0.0572990133589897801098,
      0.209170208587579882219,
      0.311881143218288923092,
      0.451887457522205738691,
      0.510043398893542883016,
      0.634063922009795976027,
      0.621252006838732244525,
      0.730098570160020182097,
      0.627666203179792259901,
      0.719578648589911275825,
      0.559001186481299299806,
      0.494715320320746701948,
      0.709206659608980650212,
      -0.196192893328145541808,
      0.0855169149021845253318,
      -0.0251877603439247809925,
    }};
  return rule;
}

}  // namespace debye
