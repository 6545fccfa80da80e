package listing;

import retrofit2.http.GET;
import retrofit2.http.Query;

interface UserService {
    @GET("api/loadUsers")
    Object loadUsers(@Query("position") String position, @Query("order") String order);
}
