from pydantic import BaseModel, ConfigDict, Field


class TechParams(BaseModel):
    """Technology and model coefficients shared by every analytic model."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    # geometry unit system
    track_pitch_nm: float = Field(default=64.0, gt=0, description="Horizontal routing track pitch")
    poly_pitch_nm: float = Field(default=78.0, gt=0, description="Contacted poly pitch")

    # BA+ macro model: t_access = a0 + a1*B + a2*W
    a0: float = Field(default=40.0, ge=0, description="Fixed access delay (ps)")
    a1: float = Field(default=1.5, ge=0, description="Bitline delay per entry (ps)")
    a2: float = Field(default=0.5, ge=0, description="Wordline delay per bit (ps)")
    # e_read = b0 + b1*W + b2*B*leak_fraction, e_write likewise with c*
    b0: float = Field(default=2.0, ge=0, description="Fixed read energy (fJ)")
    b1: float = Field(default=0.6, ge=0, description="Read energy per bit (fJ)")
    b2: float = Field(default=0.05, ge=0, description="Read bitline leakage energy per entry (fJ)")
    c0: float = Field(default=2.5, ge=0, description="Fixed write energy (fJ)")
    c1: float = Field(default=0.8, ge=0, description="Write energy per bit (fJ)")
    c2: float = Field(default=0.05, ge=0, description="Write bitline energy per entry (fJ)")
    leak_fraction: float = Field(default=0.5, ge=0, description="Bitline leakage fraction")
    leak_per_bit_nw: float = Field(default=0.02, ge=0, description="Leakage per bitcell (nW)")

    # periphery composition
    d0: float = Field(default=20.0, ge=0, description="Address latch and clock delay (ps)")
    d1: float = Field(default=12.0, ge=0, description="Delay per global decode stage (ps)")
    g0: float = Field(default=15.0, ge=0, description="Shared global bitline delay (ps)")
    g1: float = Field(default=3.0, ge=0, description="Delay per tri-state driver on a bitline (ps)")
    m0: float = Field(default=10.0, ge=0, description="Column mux delay (ps)")
    m1: float = Field(default=8.0, ge=0, description="Column mux delay per select bit (ps)")
    e_dec0: float = Field(default=1.5, ge=0, description="Decoder activation energy (fJ)")
    e_dec1: float = Field(default=0.4, ge=0, description="Decoder energy per address bit (fJ)")
    e_wire_per_um: float = Field(default=0.05, ge=0, description="Global wire energy (fJ/um)")
    p_leak_periph: float = Field(default=2.0, ge=0, description="Periphery leakage (nW)")

    # periphery area (um^2)
    periph_fraction: float = Field(default=0.15, ge=0, description="Per-macro local periphery share")
    a_dec_in: float = Field(default=0.3, ge=0, description="Predecode area per address bit")
    a_dec_line: float = Field(default=0.03, ge=0, description="Decoder area per output line")
    a_tri_bit: float = Field(default=0.05, ge=0, description="Tri-state driver area per bit")
    a_mux_bit: float = Field(default=0.1, ge=0, description="Mux area per bit")
    a_inc_line: float = Field(default=0.1, ge=0, description="Select increment area per line")
    a_xlat_bit: float = Field(default=0.5, ge=0, description="Address translator area per bit")
    a_ctrl: float = Field(default=30.0, ge=0, description="Control block area per SRAM instance")

    # parallel-access logic
    e_inc: float = Field(default=0.2, ge=0, description="Select increment energy per bank (fJ)")
    e_xlat_bit: float = Field(default=0.05, ge=0, description="Address translator energy per bit (fJ)")
    e_align_bit: float = Field(default=0.02, ge=0, description="Alignment energy per bit per stage (fJ)")
    t_inc: float = Field(default=6.0, ge=0, description="Select increment delay (ps)")
    t_xlat_bit: float = Field(default=4.0, ge=0, description="Address translator delay per bit (ps)")

    # compiled (traditional) SRAM leaf cells relative to BA+ bitcells
    trad_delay_factor: float = Field(default=1.5, ge=0, description="Array access delay derate")
    trad_energy_factor: float = Field(default=1.12, ge=0, description="Array access energy derate")
    trad_area_factor: float = Field(default=0.9, ge=0, description="Bitcell area derate")

    # floorplan
    utilization: float = Field(default=0.7, gt=0, le=1, description="Periphery placement density")
    gutter_pitches: int = Field(default=2, ge=0)
    decoder_strip_pitches: int = Field(default=24, ge=0)
    bank_periph_tracks: int = Field(default=10, ge=0)
    global_periph_tracks: int = Field(default=20, ge=0)
    rail_pitch_tracks: int = Field(default=20, gt=0)
    rail_width_tracks: int = Field(default=1, gt=0)
    pin_size_tracks: int = Field(default=1, gt=0)

    def tracks_nm(self, tracks: float) -> int:
        return int(round(tracks * self.track_pitch_nm))

    def pitches_nm(self, pitches: float) -> int:
        return int(round(pitches * self.poly_pitch_nm))


DEFAULT_TECH: TechParams = TechParams()
