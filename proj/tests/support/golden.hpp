// Expected result sets for the reference queries on the bundled fixture.
#ifndef FAIR_TESTS_GOLDEN_HPP
#define FAIR_TESTS_GOLDEN_HPP

#include <optional>
#include <string>
#include <vector>

namespace golden {

struct Row
{
    std::string university;
    std::string faculty_name;
    std::optional<std::string> research_area; // nullopt shows as NA
};

inline const std::string fffd = "\xEF\xBF\xBD";

inline const char* algorithm_query =
    "SELECT university, faculty_name, research_area FROM faculty1 where research_area like concat('%','algorithm','%')";
inline const char* data_query =
    "SELECT university, faculty_name, research_area FROM faculty1 where research_area like concat('%','data','%')";
inline const char* architecture_query =
    "SELECT university, faculty_name, research_area FROM faculty1 where research_area like concat('%','architecture','%')";
inline const char* prakash_query =
    "SELECT university, faculty_name, research_area FROM faculty1 where faculty_name like concat('%','Prakash ','%')";
inline const char* warangal_query = "SELECT faculty_name FROM faculty1 where university = 'NIT Warangal'";

inline std::vector<Row> algorithm_rows()
{
    return {
        {"NIT Allahabad", "Dr. Deepak Kumar", "Balanced Realization based frequency weighted model, reduction algorithms"},
        {"NIT Trichy", "Dr. P.Srinivasa Rao Nayak", "Non- conventional optimization algorithms"},
    };
}

inline std::vector<Row> data_rows()
{
    return {
        {"NIT Jamshedpur", "Dr. Prakash Sarkar", "Cosmology: Analysis of the Galaxy redshift survey data like SDSS"},
        {"NIT Kurukshetra", "Mahesh Pal", "Classification and Feature selection with hyperspectral data"},
        {"NIT Delhi", "Dr. Jaya Thomas", "Biodata Mining"},
    };
}

inline std::vector<Row> prakash_rows()
{
    return {
        {"NIT Patna", "Jyoti Prakash Singh", "Sentiment Analysis"},
        {"NIT Patna", "Prakash Chandra", "Heat Transfer"},
        {"NIT Raipur", "Mr. Satya Prakash Sahu", "Artificial Intelligence & Expert System"},
        {"NIT Warangal", "Dr. Prakash Saudagar", "Molecular and Biochemical parasitology"},
        {"NIT Warangal", "Dr.Prakash Saudagar", std::nullopt},
        {"NIT Bhopal", "Dr. Om Prakash Meena", "Communication Networks"},
        {"NIT Bhopal", "Dr. Jai Prakash Jaiswal" + fffd,
         "Development & convergence analysis of the iterative methods for solving nnt"},
        {"NIT Bhopal", "Dr. Jai Prakash Jaiswal" + fffd, std::nullopt},
        {"NIT Jamshedpur", "Dr. Prakash Sarkar", "Cosmology: Analysis of the Galaxy redshift survey data like SDSS"},
        {"NIT Rourkela", "Dr. Jaya Prakash Hadda", "Associate Professor"},
        {"NIT Rourkela", "Dr. Parag Prakash Sutar", "Drying and Dehydration"},
        {"NIT Rourkela", "Prof. Dibya Prakash Jena", "Assistant Professor"},
        {"NIT Rourkela", "Prof. Dibya Prakash Jena", "Assistant Professor"},
        {"NIT Rourkela", "Prof. Jyoti Prakash Kar", "Thin Electronic Films"},
        {"NIT Rourkela", "Prof. Prakash Nath Vishwakarma", "Low Temperature Condenser Matter Physics"},
        {"NIT Kurukshetra", "Sh.Prakash Chand", std::nullopt},
        {"NIT Kurukshetra", "Joy Prakash Misra", "Machining Science"},
        {"NIT Jaipur", "Dr. Chetanya Prakash Sharma" + fffd, "Physical Metallurgy"},
        {"NIT Agartala", "Dr. Suvra Prakash Mondal", "Novel Sensors for Biomedical Applications"},
        {"NIT Silchar", "Dr. Jyoti Prakash Mishra",
         "Power Electronic Control in Electric Power and Energy Systems; Power Quality"},
        {"NIT Hamirpur", "Dr. Prakash Choudhary", std::nullopt},
        {"NIT Nagaland", "Dr. Prem Prakash Mishra", "Operation Research"},
        {"NIT Uttarakhand", "Mr. Prakash Kushwaha" + fffd, std::nullopt},
    };
}

inline std::vector<std::string> warangal_names()
{
    return {"Dr. K KIRAN KUMAR", "Dr. NAGA SRINIVASULU G", "Dr. JOSEPH DAVIDSON M", "SRI. SUBHASH CHANDRA BOSE P",
            "Dr. T. SADASIVA RAO", "Dr. VASU V", "Dr. VENKALAH N", "Dr. Y. RAVI KUMAR", "Dr. VEERESH BABU A",
            "Dr. Adepu Kumar", "Dr. SURESH BABU V", "Dr. NARASIMHA RAO R", "SRI. ASHOKKUMAR REDDY I",
            "SRI. GUPTA G R K", "SRI. VENKATESWARA RAO G", "DR. G.AMBA PRASAD RAO", "Dr. RAVI KUMAR PULLI",
            "DR. SRINADH K V S", "DR. N. SELVARAJ", "Dr. VENU GOPAL A", "DR. GURURAJA RAO C",
            "DR. NEELAKANTESWARA RAO A", "DR. BANGARUBABU POPURI", "DR. SRINIVASA RAO S"};
}

inline std::vector<std::string> universities()
{
    return {"NIT Agartala", "NIT Allahabad", "NIT Andhra Pradesh", "NIT Arunachal Pradesh", "NIT Bhopal", "NIT Calicut",
            "NIT Delhi", "NIT Durgapur", "NIT Goa", "NIT Hamirpur", "NIT Jaipur", "NIT Jalandhar", "NIT Jamshedpur",
            "NIT Karnataka", "NIT Kurukshetra", "NIT Manipur", "NIT Meghalaya", "NIT Mizoram", "NIT Nagaland",
            "NIT Nagpur", "NIT Patna", "NIT Puducherry", "NIT Raipur", "NIT Rourkela", "NIT Sikkim", "NIT Silchar",
            "NIT Srinagar", "NIT Surat", "NIT Trichy", "NIT Uttarakhand", "NIT Warangal"};
}

} // namespace golden

#endif // FAIR_TESTS_GOLDEN_HPP
